//! Serde adapters for the JSON wire format: 3-vectors as `[x, y, z]` arrays
//! and 3x3 matrices as row-major arrays of arrays.

use crate::{Mat3, Vec3};

pub fn vec3_to_array(v: &Vec3) -> [f64; 3] {
    [v.x, v.y, v.z]
}

pub fn vec3_from_array(a: [f64; 3]) -> Vec3 {
    Vec3::new(a[0], a[1], a[2])
}

pub fn mat3_to_rows(m: &Mat3) -> [[f64; 3]; 3] {
    [
        [m[(0, 0)], m[(0, 1)], m[(0, 2)]],
        [m[(1, 0)], m[(1, 1)], m[(1, 2)]],
        [m[(2, 0)], m[(2, 1)], m[(2, 2)]],
    ]
}

pub fn mat3_from_rows(rows: [[f64; 3]; 3]) -> Mat3 {
    Mat3::from_rows(&[rows[0].into(), rows[1].into(), rows[2].into()])
}

/// Use with `#[serde(with = "jayvec::serde_util::vec3")]`.
pub mod vec3 {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::Vec3;

    pub fn serialize<S: Serializer>(v: &Vec3, s: S) -> Result<S::Ok, S::Error> {
        super::vec3_to_array(v).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec3, D::Error> {
        Ok(super::vec3_from_array(<[f64; 3]>::deserialize(d)?))
    }
}

/// Use with `#[serde(with = "jayvec::serde_util::mat3")]`.
pub mod mat3 {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::Mat3;

    pub fn serialize<S: Serializer>(m: &Mat3, s: S) -> Result<S::Ok, S::Error> {
        super::mat3_to_rows(m).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Mat3, D::Error> {
        Ok(super::mat3_from_rows(<[[f64; 3]; 3]>::deserialize(d)?))
    }
}

use nalgebra::{Isometry3, Quaternion, Translation3, UnitQuaternion, Vector3};
use serde::{Deserialize, Serialize};

use crate::io::round_sig6;

/// Position, orientation and uniform scale of a panel in world space.
///
/// Wire form: `{"pos":[x,y,z],"rot":[x,y,z,w],"scale":s}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawPose", into = "RawPose")]
pub struct Pose {
    pub position: Vector3<f64>,
    pub rotation: UnitQuaternion<f64>,
    pub scale: f64,
}

impl Default for Pose {
    fn default() -> Self {
        Self::identity()
    }
}

impl Pose {
    pub fn identity() -> Self {
        Self {
            position: Vector3::zeros(),
            rotation: UnitQuaternion::identity(),
            scale: 1.0,
        }
    }

    pub fn at(x: f64, y: f64, z: f64) -> Self {
        Self {
            position: Vector3::new(x, y, z),
            ..Self::identity()
        }
    }

    pub fn rotated(mut self, rotation: UnitQuaternion<f64>) -> Self {
        self.rotation = rotation;
        self
    }

    pub fn scaled(mut self, scale: f64) -> Self {
        self.scale = scale;
        self
    }

    pub fn transform_point(&self, local: &Vector3<f64>) -> Vector3<f64> {
        self.position + self.rotation * (local * self.scale)
    }

    pub fn inverse_transform_point(&self, world: &Vector3<f64>) -> Vector3<f64> {
        self.rotation.inverse() * (world - self.position) / self.scale
    }

    /// World-space panel normal (local +z).
    pub fn normal(&self) -> Vector3<f64> {
        self.rotation * Vector3::z()
    }

    /// Rigid part of the pose, scale dropped.
    pub fn isometry(&self) -> Isometry3<f64> {
        Isometry3::from_parts(Translation3::from(self.position), self.rotation)
    }

    /// Applies a rigid world transform to this pose.
    pub fn moved_by(&self, iso: &Isometry3<f64>) -> Pose {
        Pose {
            position: iso.transform_point(&self.position.into()).coords,
            rotation: iso.rotation * self.rotation,
            scale: self.scale,
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPose {
    pos: [f64; 3],
    rot: [f64; 4],
    scale: f64,
}

impl TryFrom<RawPose> for Pose {
    type Error = String;

    fn try_from(raw: RawPose) -> Result<Self, Self::Error> {
        let [x, y, z, w] = raw.rot;
        let q = Quaternion::new(w, x, y, z);
        let norm = q.norm();
        if !(norm - 1.0).abs().le(&1e-6) {
            return Err(format!("rotation quaternion norm {norm} is not within 1e-6 of 1"));
        }
        if !(raw.scale > 0.0 && raw.scale.is_finite()) {
            return Err(format!("scale must be positive, got {}", raw.scale));
        }
        if raw.pos.iter().any(|c| !c.is_finite()) {
            return Err("position must be finite".into());
        }
        Ok(Pose {
            position: Vector3::from(raw.pos),
            rotation: UnitQuaternion::from_quaternion(q),
            scale: raw.scale,
        })
    }
}

/// Quaternion components at 6 significant digits that normalize back to
/// themselves, so a saved pose reloads and resaves to the same text.
fn stable_rot(q: &UnitQuaternion<f64>) -> [f64; 4] {
    let round = |q: &Quaternion<f64>| [q.i, q.j, q.k, q.w].map(round_sig6);
    let mut r = round(q.quaternion());
    for _ in 0..8 {
        let [x, y, z, w] = r;
        let next = round(UnitQuaternion::from_quaternion(Quaternion::new(w, x, y, z)).quaternion());
        if next == r {
            break;
        }
        r = next;
    }
    r
}

impl From<Pose> for RawPose {
    fn from(p: Pose) -> Self {
        RawPose {
            pos: [p.position.x, p.position.y, p.position.z],
            rot: stable_rot(&p.rotation),
            scale: p.scale,
        }
    }
}

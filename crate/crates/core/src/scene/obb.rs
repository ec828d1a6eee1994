use nalgebra::Vector3;

use super::Pose;

/// Oriented bounding box in world space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Obb {
    pub center: Vector3<f64>,
    /// Orthonormal box axes.
    pub axes: [Vector3<f64>; 3],
    pub half_extents: Vector3<f64>,
}

impl Obb {
    /// Box given in a pose's local frame, mapped to world space.
    pub fn from_local(pose: &Pose, center: Vector3<f64>, half_extents: Vector3<f64>) -> Self {
        let m = pose.rotation.to_rotation_matrix();
        Self {
            center: pose.transform_point(&center),
            axes: [
                m.matrix().column(0).into(),
                m.matrix().column(1).into(),
                m.matrix().column(2).into(),
            ],
            half_extents: half_extents * pose.scale,
        }
    }

    pub fn corners(&self) -> [Vector3<f64>; 8] {
        let mut out = [Vector3::zeros(); 8];
        for (i, c) in out.iter_mut().enumerate() {
            let sx = if i & 1 == 0 { -1.0 } else { 1.0 };
            let sy = if i & 2 == 0 { -1.0 } else { 1.0 };
            let sz = if i & 4 == 0 { -1.0 } else { 1.0 };
            *c = self.center
                + self.axes[0] * (sx * self.half_extents.x)
                + self.axes[1] * (sy * self.half_extents.y)
                + self.axes[2] * (sz * self.half_extents.z);
        }
        out
    }

    /// Coordinates of a world point in the box frame, relative to the center.
    pub fn local_coords(&self, p: &Vector3<f64>) -> Vector3<f64> {
        let d = p - self.center;
        Vector3::new(d.dot(&self.axes[0]), d.dot(&self.axes[1]), d.dot(&self.axes[2]))
    }

    pub fn contains(&self, p: &Vector3<f64>, tolerance: f64) -> bool {
        let l = self.local_coords(p);
        (0..3).all(|i| l[i].abs() <= self.half_extents[i] + tolerance)
    }
}

/// Separating-axis overlap test over the 15 candidate axes.
///
/// Touching boxes count as overlapping.
pub fn collide(a: &Obb, b: &Obb) -> bool {
    // Guards the edge-edge axes against near-parallel edge pairs.
    const EPS: f64 = 1e-12;

    let mut r = [[0.0; 3]; 3];
    let mut abs_r = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            r[i][j] = a.axes[i].dot(&b.axes[j]);
            abs_r[i][j] = r[i][j].abs() + EPS;
        }
    }
    let d = b.center - a.center;
    let t = [d.dot(&a.axes[0]), d.dot(&a.axes[1]), d.dot(&a.axes[2])];
    let ea = a.half_extents;
    let eb = b.half_extents;

    for i in 0..3 {
        let ra = ea[i];
        let rb = eb[0] * abs_r[i][0] + eb[1] * abs_r[i][1] + eb[2] * abs_r[i][2];
        if t[i].abs() > ra + rb {
            return false;
        }
    }
    for j in 0..3 {
        let ra = ea[0] * abs_r[0][j] + ea[1] * abs_r[1][j] + ea[2] * abs_r[2][j];
        let rb = eb[j];
        let proj = t[0] * r[0][j] + t[1] * r[1][j] + t[2] * r[2][j];
        if proj.abs() > ra + rb {
            return false;
        }
    }
    for i in 0..3 {
        let (i1, i2) = ((i + 1) % 3, (i + 2) % 3);
        for j in 0..3 {
            let (j1, j2) = ((j + 1) % 3, (j + 2) % 3);
            let ra = ea[i1] * abs_r[i2][j] + ea[i2] * abs_r[i1][j];
            let rb = eb[j1] * abs_r[i][j2] + eb[j2] * abs_r[i][j1];
            let proj = t[i2] * r[i1][j] - t[i1] * r[i2][j];
            if proj.abs() > ra + rb {
                return false;
            }
        }
    }
    true
}

//! Depth-map geometry: world-frame projection, Laplacian-pyramid wrinkle
//! detection, grip directions and metric crop windows.
//!
//! Conventions used throughout:
//!
//! - Camera frame: `x` right (pixel `u`), `y` down (pixel `v`), `z` along the
//!   optical axis into the scene. Depth values are `z` in this frame, meters.
//! - World frame: the table top is the plane `z = 0`, `z` points up.
//! - Back-projection of a pixel `(u, v)` with depth `d` uses the homogeneous
//!   vector `[u·d, v·d, d, 1]ᵀ` through `T_cam→world · K⁻¹`.
//! - The world height raster is a regular metric grid (default 1 mm/px over
//!   a 0.6 m × 0.6 m table region centered on the origin).

mod candidates;
mod crop;
mod project;
mod pyramid;

pub use candidates::{extract_candidates, wrinkle_direction};
pub use crop::crop_grip_window;
pub use project::{project_to_world, project_to_world_with};
pub use pyramid::{binomial_blur5, decimate2, laplacian_pyramid_responses, laplacian_stencil};

use nalgebra::{Matrix4, Vector4};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::Grid;

/// Side length of the square table region covered by the world raster.
pub const TABLE_EXTENT_M: f64 = 0.6;
/// World raster resolution.
pub const GRID_METERS_PER_PX: f64 = 0.001;
/// Default pyramid depth.
pub const DEFAULT_LEVELS: usize = 3;
/// Default candidate threshold on level-normalized responses, meters.
pub const DEFAULT_CANDIDATE_THRESHOLD_M: f64 = 0.003;
/// Grip crop window side, meters.
pub const CROP_SIDE_M: f64 = 0.11;
/// Crop window resolution (square).
pub const CROP_SIZE_PX: usize = 64;

/// Pinhole camera embedded in homogeneous form plus a rigid camera→world
/// transform.
#[derive(Clone, Debug)]
pub struct CameraModel {
    intrinsics: Matrix4<f64>,
    intrinsics_inv: Matrix4<f64>,
    extrinsics: Matrix4<f64>,
    width: usize,
    height: usize,
}

impl CameraModel {
    /// Validates and builds a camera model. `intrinsics` must be invertible
    /// with positive focal entries; `extrinsics` must be rigid (orthonormal
    /// rotation block within 1e-9, determinant +1).
    pub fn new(intrinsics: Matrix4<f64>, extrinsics: Matrix4<f64>, width: usize, height: usize) -> Result<Self> {
        if intrinsics[(0, 0)] <= 0.0 || intrinsics[(1, 1)] <= 0.0 || intrinsics[(2, 2)] <= 0.0 {
            return Err(Error::Calibration("intrinsic focal entries must be positive".into()));
        }
        let intrinsics_inv = intrinsics
            .try_inverse()
            .ok_or_else(|| Error::Calibration("singular intrinsic matrix".into()))?;
        let r = extrinsics.fixed_view::<3, 3>(0, 0).into_owned();
        let gram = r.transpose() * r;
        let mut max_dev: f64 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                let target = if i == j { 1.0 } else { 0.0 };
                max_dev = max_dev.max((gram[(i, j)] - target).abs());
            }
        }
        if max_dev > 1e-9 {
            return Err(Error::Calibration(format!(
                "extrinsic rotation not orthonormal (max deviation {max_dev:.3e})"
            )));
        }
        if (r.determinant() - 1.0).abs() > 1e-9 {
            return Err(Error::Calibration("extrinsic rotation must have determinant +1".into()));
        }
        let bottom = extrinsics.row(3);
        if bottom[0] != 0.0 || bottom[1] != 0.0 || bottom[2] != 0.0 || bottom[3] != 1.0 {
            return Err(Error::Calibration("extrinsics bottom row must be [0 0 0 1]".into()));
        }
        Ok(Self { intrinsics, intrinsics_inv, extrinsics, width, height })
    }

    /// Standard pinhole intrinsics expanded to 4×4 homogeneous form.
    pub fn pinhole(fx: f64, fy: f64, cx: f64, cy: f64, width: usize, height: usize, extrinsics: Matrix4<f64>) -> Result<Self> {
        let mut k = Matrix4::identity();
        k[(0, 0)] = fx;
        k[(1, 1)] = fy;
        k[(0, 2)] = cx;
        k[(1, 2)] = cy;
        Self::new(k, extrinsics, width, height)
    }

    /// Camera above the table looking at the origin, tilted `tilt_rad` off
    /// vertical about the world x-axis. The camera is placed at
    /// `(0, -h·tan(tilt), h)` so the optical axis passes through the table
    /// center.
    pub fn overhead(fx: f64, fy: f64, cx: f64, cy: f64, width: usize, height: usize, height_m: f64, tilt_rad: f64) -> Result<Self> {
        let (s, c) = tilt_rad.sin_cos();
        // Camera axes expressed in world coordinates.
        let x_cam = [1.0, 0.0, 0.0];
        let z_cam = [0.0, s, -c]; // optical axis points down toward the table
        let y_cam = [0.0, -c, -s]; // = z × x
        let pos = [0.0, -height_m * (s / c), height_m];
        let mut t = Matrix4::identity();
        for i in 0..3 {
            t[(i, 0)] = x_cam[i];
            t[(i, 1)] = y_cam[i];
            t[(i, 2)] = z_cam[i];
            t[(i, 3)] = pos[i];
        }
        Self::pinhole(fx, fy, cx, cy, width, height, t)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn extrinsics(&self) -> &Matrix4<f64> {
        &self.extrinsics
    }

    /// Camera center in world coordinates.
    pub fn position(&self) -> [f64; 3] {
        [self.extrinsics[(0, 3)], self.extrinsics[(1, 3)], self.extrinsics[(2, 3)]]
    }

    /// Back-projects pixel `(u, v)` with camera-frame depth `d` to a world
    /// point: `T_cam→world · K⁻¹ · [u·d, v·d, d, 1]ᵀ`.
    pub fn back_project(&self, u: f64, v: f64, d: f64) -> [f64; 3] {
        let h = Vector4::new(u * d, v * d, d, 1.0);
        let p = self.extrinsics * (self.intrinsics_inv * h);
        [p[0], p[1], p[2]]
    }

    /// World-frame direction of the ray through pixel `(u, v)` (unnormalized:
    /// scaling the direction by `d` and adding the camera position gives the
    /// back-projection of depth `d`).
    pub fn ray_direction(&self, u: f64, v: f64) -> [f64; 3] {
        let a = self.back_project(u, v, 1.0);
        let c = self.position();
        [a[0] - c[0], a[1] - c[1], a[2] - c[2]]
    }
}

/// Depth image in the camera frame with a per-pixel validity mask.
#[derive(Clone, Debug)]
pub struct DepthImage {
    grid: Grid,
    valid: Vec<bool>,
}

impl DepthImage {
    /// All valid depths must be finite and positive.
    pub fn new(grid: Grid, valid: Vec<bool>) -> Result<Self> {
        if valid.len() != grid.width() * grid.height() {
            return Err(Error::Shape {
                expected: format!("{} mask entries", grid.width() * grid.height()),
                got: format!("{}", valid.len()),
            });
        }
        for (i, &ok) in valid.iter().enumerate() {
            if ok {
                let d = grid.data()[i];
                if !d.is_finite() || d <= 0.0 {
                    return Err(Error::Calibration(format!("invalid depth {d} marked valid at index {i}")));
                }
            }
        }
        Ok(Self { grid, valid })
    }

    pub fn width(&self) -> usize {
        self.grid.width()
    }

    pub fn height(&self) -> usize {
        self.grid.height()
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    #[inline]
    pub fn is_valid(&self, x: usize, y: usize) -> bool {
        self.valid[y * self.grid.width() + x]
    }

    pub fn valid_mask(&self) -> &[bool] {
        &self.valid
    }

    pub fn valid_count(&self) -> usize {
        self.valid.iter().filter(|v| **v).count()
    }
}

/// Regular metric height grid: `z(i, j)` is height above the table at world
/// `(origin_x + i·mpp, origin_y + j·mpp)`.
#[derive(Clone, Debug, PartialEq)]
pub struct HeightGrid {
    pub z: Grid,
    pub meters_per_px: f64,
    pub origin_x: f64,
    pub origin_y: f64,
}

impl HeightGrid {
    /// Standard grid centered on the world origin.
    pub fn standard(extent_m: f64, meters_per_px: f64) -> Self {
        let n = (extent_m / meters_per_px).round() as usize;
        let origin = -extent_m / 2.0 + meters_per_px / 2.0;
        Self { z: Grid::new(n, n), meters_per_px, origin_x: origin, origin_y: origin }
    }

    pub fn width(&self) -> usize {
        self.z.width()
    }

    pub fn height(&self) -> usize {
        self.z.height()
    }

    pub fn world_x(&self, i: usize) -> f64 {
        self.origin_x + i as f64 * self.meters_per_px
    }

    pub fn world_y(&self, j: usize) -> f64 {
        self.origin_y + j as f64 * self.meters_per_px
    }

    /// Fractional pixel coordinates of a world point.
    pub fn frac_px(&self, x: f64, y: f64) -> (f64, f64) {
        ((x - self.origin_x) / self.meters_per_px, (y - self.origin_y) / self.meters_per_px)
    }

    pub fn contains_world(&self, x: f64, y: f64) -> bool {
        let (fx, fy) = self.frac_px(x, y);
        fx >= -0.5 && fy >= -0.5 && fx <= self.width() as f64 - 0.5 && fy <= self.height() as f64 - 0.5
    }

    /// Bilinear height at a world point; outside the raster reads as table
    /// level (0).
    pub fn sample_world(&self, x: f64, y: f64) -> f64 {
        let (fx, fy) = self.frac_px(x, y);
        self.z.sample_bilinear(fx, fy, 0.0)
    }
}

/// World-frame height map: the metric z-raster plus (when produced by
/// projection) the per-pixel world points of the source depth image.
#[derive(Clone, Debug)]
pub struct WorldHeightMap {
    pub grid: HeightGrid,
    /// Per source-pixel world points, `None` where the depth was invalid.
    /// Synthetic height maps have no source image and leave this empty.
    pub camera_points: Option<PointRaster>,
}

#[derive(Clone, Debug)]
pub struct PointRaster {
    pub width: usize,
    pub height: usize,
    pub points: Vec<Option<[f64; 3]>>,
}

impl WorldHeightMap {
    pub fn from_grid(grid: HeightGrid) -> Self {
        Self { grid, camera_points: None }
    }

    /// Height above table at integer raster pixel.
    pub fn z_at(&self, i: usize, j: usize) -> f64 {
        self.grid.z.get(i, j)
    }
}

/// One grip candidate: a world point on a wrinkle, the wrinkle's planar
/// direction, and where in the pyramid it was found.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GripCandidate {
    /// World position, meters. `z > 0`: candidates sit on cloth.
    pub position: [f64; 3],
    /// Planar wrinkle angle, radians in `[0, π)`.
    pub direction: f64,
    /// Pyramid level the response peak was found at.
    pub pyramid_level: u8,
    /// Level-normalized Laplacian magnitude, meters.
    pub response: f64,
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_4;

    #[test]
    fn rejects_singular_intrinsics() {
        let mut k = Matrix4::identity();
        k[(0, 0)] = 0.0;
        let err = CameraModel::new(k, Matrix4::identity(), 8, 8);
        assert!(err.is_err());
    }

    #[test]
    fn rejects_non_rigid_extrinsics() {
        let mut t = Matrix4::identity();
        t[(0, 0)] = 2.0;
        assert!(CameraModel::new(Matrix4::identity(), t, 8, 8).is_err());
        // Reflection: orthonormal but det = -1.
        let mut t = Matrix4::identity();
        t[(0, 0)] = -1.0;
        assert!(CameraModel::new(Matrix4::identity(), t, 8, 8).is_err());
    }

    #[test]
    fn identity_camera_back_projects_scaled_pixels() {
        let cam = CameraModel::new(Matrix4::identity(), Matrix4::identity(), 8, 8).unwrap();
        let p = cam.back_project(3.0, 5.0, 1.0);
        assert_eq!(p, [3.0, 5.0, 1.0]);
        let p = cam.back_project(3.0, 5.0, 2.0);
        assert_eq!(p, [6.0, 10.0, 2.0]);
    }

    #[test]
    fn overhead_extrinsics_are_rigid_and_look_at_origin() {
        let cam = CameraModel::overhead(100.0, 100.0, 64.0, 64.0, 128, 128, 1.06, 23.5_f64.to_radians()).unwrap();
        // The principal ray (through (cx, cy)) should hit the table at the origin.
        let c = cam.position();
        let d = cam.ray_direction(64.0, 64.0);
        let t = -c[2] / d[2];
        let hit = [c[0] + t * d[0], c[1] + t * d[1]];
        assert!(hit[0].abs() < 1e-9 && hit[1].abs() < 1e-9, "hit {hit:?}");
    }

    #[test]
    fn rigid_transform_preserves_pixel_pair_distances() {
        // Distances between back-projected points are invariant to the choice
        // of rigid extrinsics.
        let t1 = Matrix4::identity();
        let (s, c) = FRAC_PI_4.sin_cos();
        let mut t2 = Matrix4::identity();
        t2[(0, 0)] = c;
        t2[(0, 1)] = -s;
        t2[(1, 0)] = s;
        t2[(1, 1)] = c;
        t2[(0, 3)] = 0.4;
        t2[(2, 3)] = -0.2;
        let cam1 = CameraModel::pinhole(90.0, 110.0, 32.0, 30.0, 64, 64, t1).unwrap();
        let cam2 = CameraModel::pinhole(90.0, 110.0, 32.0, 30.0, 64, 64, t2).unwrap();
        let pairs = [((3.0, 4.0, 0.8), (50.0, 20.0, 1.3)), ((10.0, 60.0, 2.0), (11.0, 61.0, 2.01))];
        for ((u1, v1, d1), (u2, v2, d2)) in pairs {
            let dist = |cam: &CameraModel| {
                let a = cam.back_project(u1, v1, d1);
                let b = cam.back_project(u2, v2, d2);
                ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2) + (a[2] - b[2]).powi(2)).sqrt()
            };
            assert!((dist(&cam1) - dist(&cam2)).abs() <= 1e-9);
        }
    }

    #[test]
    fn depth_image_rejects_nonpositive_valid_depths() {
        let g = Grid::from_vec(2, 1, vec![1.0, -0.5]);
        assert!(DepthImage::new(g.clone(), vec![true, true]).is_err());
        assert!(DepthImage::new(g, vec![true, false]).is_ok());
    }
}

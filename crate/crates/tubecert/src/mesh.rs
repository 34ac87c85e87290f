//! Triangle meshes of helicoid patches and tube boundaries in the upper
//! half-space model, with a deterministic OBJ writer and re-parser.

use std::f64::consts::PI;

use crate::error::{GeometryError, ObjError};
use crate::geometry::{helicoid_point, tube_scalars, ComplexLength};

/// Sampling description of a helicoid patch.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HelicoidPatch {
    /// Twist parameter of the helicoid.
    pub a: f64,
    pub u_range: (f64, f64),
    pub v_range: (f64, f64),
    /// Vertex counts along u and v, at least 2 each.
    pub nu: usize,
    pub nv: usize,
}

impl HelicoidPatch {
    pub fn new(
        a: f64,
        u_range: (f64, f64),
        v_range: (f64, f64),
        nu: usize,
        nv: usize,
    ) -> Result<Self, GeometryError> {
        let patch = Self {
            a,
            u_range,
            v_range,
            nu,
            nv,
        };
        patch.validate()?;
        Ok(patch)
    }

    /// Patch of the annulus quotient for one tube: a = |theta|/ell,
    /// u spanning [-r0, r0], v in [0, v_max].
    pub fn for_tube(
        cl: ComplexLength,
        v_max: f64,
        nu: usize,
        nv: usize,
    ) -> Result<Self, GeometryError> {
        if !v_max.is_finite() || v_max <= 0.0 {
            return Err(GeometryError::domain(
                "HelicoidPatch::for_tube",
                "v_max",
                v_max,
                "must be finite and > 0",
            ));
        }
        let r0 = tube_scalars(cl.ell())?.r0;
        Self::new(cl.twist_parameter(), (-r0, r0), (0.0, v_max), nu, nv)
    }

    fn validate(&self) -> Result<(), GeometryError> {
        let finite = self.a.is_finite()
            && self.u_range.0.is_finite()
            && self.u_range.1.is_finite()
            && self.v_range.0.is_finite()
            && self.v_range.1.is_finite();
        if !finite {
            return Err(GeometryError::domain(
                "HelicoidPatch",
                "ranges",
                f64::NAN,
                "parameters must be finite",
            ));
        }
        if self.u_range.0 >= self.u_range.1 {
            return Err(GeometryError::domain(
                "HelicoidPatch",
                "u_range",
                self.u_range.0,
                "must satisfy u0 < u1",
            ));
        }
        if self.v_range.0 >= self.v_range.1 {
            return Err(GeometryError::domain(
                "HelicoidPatch",
                "v_range",
                self.v_range.0,
                "must satisfy v0 < v1",
            ));
        }
        if self.nu < 2 || self.nv < 2 {
            return Err(GeometryError::domain(
                "HelicoidPatch",
                "nu/nv",
                self.nu.min(self.nv) as f64,
                "sample counts must be >= 2",
            ));
        }
        Ok(())
    }
}

/// Indexed triangle mesh in upper half-space coordinates (x, y, t), t > 0,
/// with a per-vertex distance attribute.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TriangleMesh {
    pub vertices: Vec<[f64; 3]>,
    pub triangles: Vec<[usize; 3]>,
    /// Hyperbolic distance of each vertex to the tube axis.
    pub u_distance: Vec<f64>,
}

impl TriangleMesh {
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Hyperbolic area of the piecewise-linear surface: per-triangle
    /// Euclidean area scaled by 1/t^2 at the triangle centroid, a
    /// first-order quadrature of ds^2 = (|dz|^2 + dt^2)/t^2.
    pub fn discrete_hyperbolic_area(&self) -> f64 {
        let mut total = 0.0;
        for tri in &self.triangles {
            let [a, b, c] = [
                self.vertices[tri[0]],
                self.vertices[tri[1]],
                self.vertices[tri[2]],
            ];
            let u = [b[0] - a[0], b[1] - a[1], b[2] - a[2]];
            let v = [c[0] - a[0], c[1] - a[1], c[2] - a[2]];
            let cross = [
                u[1] * v[2] - u[2] * v[1],
                u[2] * v[0] - u[0] * v[2],
                u[0] * v[1] - u[1] * v[0],
            ];
            let area =
                0.5 * (cross[0] * cross[0] + cross[1] * cross[1] + cross[2] * cross[2]).sqrt();
            let t_bar = (a[2] + b[2] + c[2]) / 3.0;
            total += area / (t_bar * t_bar);
        }
        total
    }
}

/// Splits the (i, j) grid quad along the fixed diagonal
/// (i, j) -> (i+1, j) -> (i+1, j+1) / (i, j) -> (i+1, j+1) -> (i, j+1).
fn push_quad(
    triangles: &mut Vec<[usize; 3]>,
    idx: impl Fn(usize, usize) -> usize,
    i: usize,
    j: usize,
) {
    triangles.push([idx(i, j), idx(i + 1, j), idx(i + 1, j + 1)]);
    triangles.push([idx(i, j), idx(i + 1, j + 1), idx(i, j + 1)]);
}

/// Samples the patch on its nu x nv vertex grid.
pub fn sample_helicoid(patch: &HelicoidPatch) -> Result<TriangleMesh, GeometryError> {
    patch.validate()?;
    let (nu, nv) = (patch.nu, patch.nv);
    let du = (patch.u_range.1 - patch.u_range.0) / (nu - 1) as f64;
    let dv = (patch.v_range.1 - patch.v_range.0) / (nv - 1) as f64;

    let mut vertices = Vec::with_capacity(nu * nv);
    let mut u_distance = Vec::with_capacity(nu * nv);
    for j in 0..nv {
        let v = patch.v_range.0 + dv * j as f64;
        for i in 0..nu {
            let u = patch.u_range.0 + du * i as f64;
            let p = helicoid_point(patch.a, u, v);
            vertices.push([p.z.re, p.z.im, p.t]);
            u_distance.push(u.abs());
        }
    }

    let mut triangles = Vec::with_capacity(2 * (nu - 1) * (nv - 1));
    let idx = |i: usize, j: usize| j * nu + i;
    for j in 0..nv - 1 {
        for i in 0..nu - 1 {
            push_quad(&mut triangles, idx, i, j);
        }
    }

    Ok(TriangleMesh {
        vertices,
        triangles,
        u_distance,
    })
}

/// Samples the boundary torus of the maximal solid tube over one fundamental
/// domain v in [0, ell], with `n_circ` azimuthal and `n_len` length segments.
///
/// The azimuth is sheared by theta * v / ell so the two ends match under the
/// identification z -> e^(ell + i theta) z.
pub fn sample_tube_boundary(
    cl: ComplexLength,
    n_circ: usize,
    n_len: usize,
) -> Result<TriangleMesh, GeometryError> {
    if n_circ < 3 {
        return Err(GeometryError::domain(
            "sample_tube_boundary",
            "n_circ",
            n_circ as f64,
            "must be >= 3",
        ));
    }
    if n_len < 2 {
        return Err(GeometryError::domain(
            "sample_tube_boundary",
            "n_len",
            n_len as f64,
            "must be >= 2",
        ));
    }
    let s = tube_scalars(cl.ell())?;
    let tanh_r0 = s.sinh_r0 / s.cosh_r0;
    let sech_r0 = 1.0 / s.cosh_r0;

    let cols = n_circ + 1;
    let rows = n_len + 1;
    let mut vertices = Vec::with_capacity(cols * rows);
    let mut u_distance = Vec::with_capacity(cols * rows);
    for j in 0..rows {
        let frac = j as f64 / n_len as f64;
        let v = cl.ell() * frac;
        let twist = cl.theta() * frac;
        let ev = v.exp();
        for i in 0..cols {
            let phi = 2.0 * PI * i as f64 / n_circ as f64 + twist;
            vertices.push([
                ev * tanh_r0 * phi.cos(),
                ev * tanh_r0 * phi.sin(),
                ev * sech_r0,
            ]);
            u_distance.push(s.r0);
        }
    }

    let mut triangles = Vec::with_capacity(2 * n_circ * n_len);
    let idx = |i: usize, j: usize| j * cols + i;
    for j in 0..n_len {
        for i in 0..n_circ {
            push_quad(&mut triangles, idx, i, j);
        }
    }

    Ok(TriangleMesh {
        vertices,
        triangles,
        u_distance,
    })
}

/// Writes the mesh as Wavefront-style text: `v x y t` lines, then 1-based
/// `f i j k` lines, reals at 9 significant digits. The per-vertex
/// `u_distance` attribute rides in a trailing comment table (`# ud <value>`,
/// one line per vertex, in vertex order), a documented non-standard
/// extension. Output bytes are deterministic for identical meshes.
pub fn write_obj(mesh: &TriangleMesh) -> Vec<u8> {
    let mut out = String::from("# tubecert mesh\n");
    out.push_str(&format!(
        "# counts v={} f={}\n",
        mesh.vertices.len(),
        mesh.triangles.len()
    ));
    for v in &mesh.vertices {
        out.push_str(&format!("v {:.8e} {:.8e} {:.8e}\n", v[0], v[1], v[2]));
    }
    for t in &mesh.triangles {
        out.push_str(&format!("f {} {} {}\n", t[0] + 1, t[1] + 1, t[2] + 1));
    }
    if !mesh.u_distance.is_empty() {
        out.push_str("# attr u_distance\n");
        for d in &mesh.u_distance {
            out.push_str(&format!("# ud {d:.8e}\n"));
        }
    }
    out.into_bytes()
}

/// Reads the subset of OBJ written by [`write_obj`]: `v` and `f` lines plus
/// the `# ud` attribute table. Face indices are validated against the vertex
/// count.
pub fn read_obj(bytes: &[u8]) -> Result<TriangleMesh, ObjError> {
    let text = std::str::from_utf8(bytes).map_err(|e| ObjError::Parse {
        line: 0,
        message: format!("not utf-8: {e}"),
    })?;
    let mut mesh = TriangleMesh::default();
    for (ln, line) in text.lines().enumerate() {
        let line_no = ln + 1;
        let bad = |message: String| ObjError::Parse {
            line: line_no,
            message,
        };
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix("v ") {
            let coords: Vec<f64> = rest
                .split_whitespace()
                .map(|tok| tok.parse::<f64>())
                .collect::<Result<_, _>>()
                .map_err(|e| bad(format!("bad vertex: {e}")))?;
            if coords.len() != 3 {
                return Err(bad(format!(
                    "vertex needs 3 coordinates, got {}",
                    coords.len()
                )));
            }
            mesh.vertices.push([coords[0], coords[1], coords[2]]);
        } else if let Some(rest) = trimmed.strip_prefix("f ") {
            let idx: Vec<usize> = rest
                .split_whitespace()
                .map(|tok| tok.parse::<usize>())
                .collect::<Result<_, _>>()
                .map_err(|e| bad(format!("bad face: {e}")))?;
            if idx.len() != 3 {
                return Err(bad(format!("face needs 3 indices, got {}", idx.len())));
            }
            for &i in &idx {
                if i == 0 || i > mesh.vertices.len() {
                    return Err(bad(format!("face index {i} out of range")));
                }
            }
            mesh.triangles.push([idx[0] - 1, idx[1] - 1, idx[2] - 1]);
        } else if let Some(rest) = trimmed.strip_prefix("# ud ") {
            let d: f64 = rest
                .trim()
                .parse()
                .map_err(|e| bad(format!("bad u_distance: {e}")))?;
            mesh.u_distance.push(d);
        } else if trimmed.starts_with('#') {
            continue;
        } else {
            return Err(bad(format!("unrecognized line: {trimmed:?}")));
        }
    }
    if !mesh.u_distance.is_empty() && mesh.u_distance.len() != mesh.vertices.len() {
        return Err(ObjError::Parse {
            line: 0,
            message: format!(
                "u_distance table has {} entries for {} vertices",
                mesh.u_distance.len(),
                mesh.vertices.len()
            ),
        });
    }
    Ok(mesh)
}

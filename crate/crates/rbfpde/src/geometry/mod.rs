//! Collocation node generation: boundary nodes with outward normals and
//! condition tags, interior fill, symmetric orderings, and CSV export.
//!
//! Clouds store their nodes as three contiguous blocks — Dirichlet boundary,
//! Neumann boundary, interior — because the solvers' index conventions rely
//! on that layout. All samplers are deterministic: low-discrepancy sequences
//! (Halton, spherical Fibonacci) stand in for random placement, so repeated
//! runs reproduce clouds bit for bit.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::fmt::Write as _;
use thiserror::Error;

/// Distance below which two nodes count as duplicates.
const DUPLICATE_TOL: f64 = 1e-10;
/// Tolerance for matching mirror partners in [`symmetric_ordering`].
const MIRROR_TOL: f64 = 1e-10;
/// Margin kept between the cavity surface and the intersection circle so
/// that outward-normal displacement tests stay decisive.
const CAVITY_SEAM_MARGIN: f64 = 1e-3;

/// Errors from cloud construction and reordering.
#[derive(Debug, Error)]
pub enum GeometryError {
    /// A parameter is out of range or the requested layout is impossible.
    #[error("invalid geometry parameter: {what}")]
    Parameter { what: String },
    /// The cloud is not invariant under point reflection through its centroid.
    #[error("cloud is not point-symmetric: {what}")]
    Asymmetric { what: String },
}

fn parameter(what: impl Into<String>) -> GeometryError {
    GeometryError::Parameter { what: what.into() }
}

/// Role of a node in the collocation system.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NodeKind {
    Dirichlet,
    Neumann,
    Interior,
}

impl NodeKind {
    fn block_rank(self) -> usize {
        match self {
            NodeKind::Dirichlet => 0,
            NodeKind::Neumann => 1,
            NodeKind::Interior => 2,
        }
    }

    fn label(self) -> &'static str {
        match self {
            NodeKind::Dirichlet => "dirichlet",
            NodeKind::Neumann => "neumann",
            NodeKind::Interior => "interior",
        }
    }
}

/// A collocation point, optionally carrying the outward unit normal of the
/// boundary it sits on.
#[derive(Clone, Debug)]
pub struct Node {
    pub position: Vec<f64>,
    pub kind: NodeKind,
    pub normal: Option<Vec<f64>>,
}

/// An immutable, block-ordered set of nodes.
#[derive(Clone, Debug)]
pub struct NodeCloud {
    nodes: Vec<Node>,
    dim: usize,
    dirichlet: usize,
    neumann: usize,
    interior: usize,
}

impl NodeCloud {
    /// Builds a cloud from loose nodes: sorts them into the Dirichlet /
    /// Neumann / interior block layout (stable within each block) and
    /// validates dimensions, normals and pairwise separation.
    pub fn new(mut nodes: Vec<Node>, dim: usize) -> Result<Self, GeometryError> {
        if !(2..=3).contains(&dim) {
            return Err(parameter(format!("cloud dimension must be 2 or 3, got {dim}")));
        }
        if nodes.is_empty() {
            return Err(parameter("cloud must contain at least one node"));
        }
        nodes.sort_by_key(|n| n.kind.block_rank());
        for node in &nodes {
            if node.position.len() != dim {
                return Err(parameter(format!(
                    "node {:?} does not match cloud dimension {dim}",
                    node.position
                )));
            }
            if node.position.iter().any(|v| !v.is_finite()) {
                return Err(parameter(format!("node position {:?} is not finite", node.position)));
            }
            match (&node.kind, &node.normal) {
                (NodeKind::Interior, None) => {}
                (NodeKind::Interior, Some(_)) => {
                    return Err(parameter("interior nodes must not carry a normal"));
                }
                (_, None) => {
                    return Err(parameter(format!(
                        "boundary node {:?} is missing its outward normal",
                        node.position
                    )));
                }
                (_, Some(n)) => {
                    if n.len() != dim || n.iter().any(|v| !v.is_finite()) {
                        return Err(parameter("boundary normal has the wrong shape"));
                    }
                    let len = n.iter().map(|v| v * v).sum::<f64>().sqrt();
                    if (len - 1.0).abs() > 1e-12 {
                        return Err(parameter(format!(
                            "normal at {:?} has length {len}, expected 1",
                            node.position
                        )));
                    }
                }
            }
        }
        for i in 0..nodes.len() {
            for j in i + 1..nodes.len() {
                if distance(&nodes[i].position, &nodes[j].position) <= DUPLICATE_TOL {
                    return Err(parameter(format!(
                        "nodes {i} and {j} coincide at {:?}",
                        nodes[i].position
                    )));
                }
            }
        }
        let dirichlet = nodes.iter().filter(|n| n.kind == NodeKind::Dirichlet).count();
        let neumann = nodes.iter().filter(|n| n.kind == NodeKind::Neumann).count();
        let interior = nodes.len() - dirichlet - neumann;
        Ok(NodeCloud { nodes, dim, dirichlet, neumann, interior })
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Block sizes as (Dirichlet, Neumann, interior).
    pub fn counts(&self) -> (usize, usize, usize) {
        (self.dirichlet, self.neumann, self.interior)
    }

    pub fn dirichlet_count(&self) -> usize {
        self.dirichlet
    }

    pub fn neumann_count(&self) -> usize {
        self.neumann
    }

    pub fn interior_count(&self) -> usize {
        self.interior
    }

    pub fn boundary_count(&self) -> usize {
        self.dirichlet + self.neumann
    }

    pub fn dirichlet(&self) -> &[Node] {
        &self.nodes[..self.dirichlet]
    }

    pub fn neumann(&self) -> &[Node] {
        &self.nodes[self.dirichlet..self.dirichlet + self.neumann]
    }

    pub fn interior(&self) -> &[Node] {
        &self.nodes[self.dirichlet + self.neumann..]
    }

    pub fn boundary(&self) -> &[Node] {
        &self.nodes[..self.dirichlet + self.neumann]
    }

    /// Serializes the cloud as CSV with columns `x,y[,z],kind,nx,ny[,nz]`;
    /// interior rows leave the normal columns empty.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        if self.dim == 2 {
            out.push_str("x,y,kind,nx,ny\n");
        } else {
            out.push_str("x,y,z,kind,nx,ny,nz\n");
        }
        for node in &self.nodes {
            for v in &node.position {
                let _ = write!(out, "{v},");
            }
            out.push_str(node.kind.label());
            match &node.normal {
                Some(n) => {
                    for v in n {
                        let _ = write!(out, ",{v}");
                    }
                }
                None => out.push_str(&",".repeat(self.dim)),
            }
            out.push('\n');
        }
        out
    }
}

fn distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

/// Negation that maps +0.0 to +0.0, keeping mirrored coordinates free of
/// negative zeros (which would leak into the CSV export).
fn mirrored(v: &[f64]) -> Vec<f64> {
    v.iter().map(|x| 0.0 - x).collect()
}

/// Requested node counts for [`sample_square_with_cutout`].
#[derive(Clone, Copy, Debug)]
pub struct SquareCutoutCounts {
    /// Nodes equally spaced in arc length along the outer square.
    pub outer: usize,
    /// Nodes equally spaced in angle along the cutout curve.
    pub cutout: usize,
    /// Interior nodes: a coarse grid without a cutout, otherwise one node
    /// per ray midway between the cutout curve and the square.
    pub interior: usize,
}

/// Requested node counts for [`sample_cube_with_two_ball_cavity`].
#[derive(Clone, Copy, Debug)]
pub struct CubeCavityCounts {
    /// Each cube face carries a `face_divisions`² cell-centered grid.
    pub face_divisions: usize,
    /// Spherical Fibonacci samples generated per cavity ball before the
    /// seam rejection; the surviving count is reported by the cloud.
    pub cavity_per_sphere: usize,
    /// Exact number of interior evaluation points (Halton, rejection).
    pub evaluation: usize,
}

/// True when `point` lies strictly inside the square of the given half side
/// and strictly outside the cutout curve (when one is present).
pub fn square_cutout_material(
    half_side: f64,
    cutout: Option<&dyn Fn(f64) -> f64>,
    point: &[f64],
) -> bool {
    assert_eq!(point.len(), 2, "square material test expects a 2D point");
    if point[0].abs() >= half_side || point[1].abs() >= half_side {
        return false;
    }
    match cutout {
        None => true,
        Some(curve) => {
            let r = (point[0] * point[0] + point[1] * point[1]).sqrt();
            r > curve(point[1].atan2(point[0]))
        }
    }
}

/// True when `point` lies strictly inside the cube of the given half side
/// and strictly outside both unit cavity balls.
pub fn cube_cavity_material(half_side: f64, point: &[f64]) -> bool {
    assert_eq!(point.len(), 3, "cube material test expects a 3D point");
    if point.iter().any(|v| v.abs() >= half_side) {
        return false;
    }
    for center_x in [FRAC_1_SQRT_2, -FRAC_1_SQRT_2] {
        let dx = point[0] - center_x;
        if dx * dx + point[1] * point[1] + point[2] * point[2] <= 1.0 {
            return false;
        }
    }
    true
}

fn radical_inverse(mut index: usize, base: usize) -> f64 {
    let inv = 1.0 / base as f64;
    let mut factor = inv;
    let mut value = 0.0;
    while index > 0 {
        value += (index % base) as f64 * factor;
        index /= base;
        factor *= inv;
    }
    value
}

fn halton_rejection_fill(
    count: usize,
    dim: usize,
    half_side: f64,
    mut keep: impl FnMut(&[f64]) -> bool,
) -> Result<Vec<Vec<f64>>, GeometryError> {
    const BASES: [usize; 3] = [2, 3, 5];
    let mut points = Vec::with_capacity(count);
    let budget = 10_000 + 200 * count;
    let mut index = 1;
    while points.len() < count && index <= budget {
        let p: Vec<f64> = (0..dim)
            .map(|k| -half_side + 2.0 * half_side * radical_inverse(index, BASES[k]))
            .collect();
        if keep(&p) {
            points.push(p);
        }
        index += 1;
    }
    if points.len() < count {
        return Err(parameter(format!(
            "could not place {count} material points; the material region is too small"
        )));
    }
    Ok(points)
}

/// Deterministic low-discrepancy fill of the square-with-cutout material
/// region; used for checkpoint sets in error measurements.
pub fn material_points_square_cutout(
    half_side: f64,
    cutout: Option<&dyn Fn(f64) -> f64>,
    count: usize,
) -> Result<Vec<Vec<f64>>, GeometryError> {
    if !(half_side.is_finite() && half_side > 0.0) {
        return Err(parameter("square half side must be positive"));
    }
    halton_rejection_fill(count, 2, half_side, |p| square_cutout_material(half_side, cutout, p))
}

/// Deterministic low-discrepancy fill of the cube-with-cavity material region.
pub fn material_points_cube_cavity(
    half_side: f64,
    count: usize,
) -> Result<Vec<Vec<f64>>, GeometryError> {
    check_cube_half_side(half_side)?;
    halton_rejection_fill(count, 3, half_side, |p| cube_cavity_material(half_side, p))
}

fn check_cube_half_side(half_side: f64) -> Result<(), GeometryError> {
    let limit = 1.0 + FRAC_1_SQRT_2;
    if !(half_side.is_finite() && half_side > limit) {
        return Err(parameter(format!(
            "cube half side must exceed 1 + sqrt(2)/2 ≈ {limit:.6} so the cavity clears the faces"
        )));
    }
    Ok(())
}

/// Grid coordinates strictly inside (-h, h), arranged so that entry `i` and
/// entry `g-1-i` are exact negations of each other.
fn symmetric_axis_coords(divisions: usize, half_side: f64) -> Vec<f64> {
    let mut coords = vec![0.0; divisions];
    let step = 2.0 * half_side / (divisions as f64 + 1.0);
    for i in 0..divisions / 2 {
        let c = -half_side + (i as f64 + 1.0) * step;
        coords[i] = c;
        coords[divisions - 1 - i] = 0.0 - c;
    }
    coords
}

/// Splits `count` into the most square grid-factor pair (columns, rows).
fn closest_factors(count: usize) -> (usize, usize) {
    let mut best = (1, count);
    let mut d = 1;
    while d * d <= count {
        if count.is_multiple_of(d) {
            best = (d, count / d);
        }
        d += 1;
    }
    best
}

/// Samples the square `[-half_side, half_side]²` with an optional star-shaped
/// cutout around the origin given by the radial curve `r(θ)`.
///
/// Outer nodes are equally spaced in arc length (cell-centered, so corners
/// are never sampled when `outer` is a multiple of four); cutout nodes are
/// equally spaced in angle and their normals point into the hole; interior
/// nodes form a coarse grid, or — when a cutout is present — one node per ray
/// midway between the curve and the square. When `neumann_top` is set, outer
/// nodes on the top edge are tagged as Neumann boundary.
pub fn sample_square_with_cutout(
    half_side: f64,
    cutout: Option<&dyn Fn(f64) -> f64>,
    counts: SquareCutoutCounts,
    neumann_top: bool,
) -> Result<NodeCloud, GeometryError> {
    if !(half_side.is_finite() && half_side > 0.0) {
        return Err(parameter("square half side must be positive"));
    }
    let curve = validated_cutout(half_side, cutout, counts.cutout > 0)?;
    if counts.outer + counts.cutout + counts.interior == 0 {
        return Err(parameter("requested an empty cloud"));
    }
    let mut nodes = Vec::new();
    sample_square_outline(half_side, counts.outer, neumann_top, &mut nodes)?;
    if let Some(curve) = curve {
        for j in 0..counts.cutout {
            let theta = 2.0 * PI * j as f64 / counts.cutout as f64;
            nodes.push(cutout_node(curve, theta));
        }
        // One interior node per ray, midway between the hole and the square.
        for j in 0..counts.interior {
            let theta = 2.0 * PI * j as f64 / counts.interior as f64;
            let reach = half_side / theta.cos().abs().max(theta.sin().abs());
            let rho = 0.5 * (curve(theta) + reach);
            nodes.push(Node {
                position: vec![rho * theta.cos(), rho * theta.sin()],
                kind: NodeKind::Interior,
                normal: None,
            });
        }
    } else {
        if counts.cutout > 0 {
            return Err(parameter("cutout nodes requested but no cutout curve given"));
        }
        let (gx, gy) = closest_factors(counts.interior);
        if counts.interior > 0 {
            let xs = symmetric_axis_coords(gx, half_side);
            let ys = symmetric_axis_coords(gy, half_side);
            for y in &ys {
                for x in &xs {
                    nodes.push(Node {
                        position: vec![*x, *y],
                        kind: NodeKind::Interior,
                        normal: None,
                    });
                }
            }
        }
    }
    NodeCloud::new(nodes, 2)
}

/// Checks the cutout curve on a fine angular grid: it must be single-signed,
/// and a positive curve must stay strictly inside the square.
#[allow(clippy::type_complexity)]
fn validated_cutout(
    half_side: f64,
    cutout: Option<&dyn Fn(f64) -> f64>,
    required: bool,
) -> Result<Option<&dyn Fn(f64) -> f64>, GeometryError> {
    let Some(curve) = cutout else {
        return Ok(None);
    };
    const SAMPLES: usize = 4096;
    let mut any_positive = false;
    let mut min_r = f64::INFINITY;
    for j in 0..SAMPLES {
        let theta = 2.0 * PI * j as f64 / SAMPLES as f64;
        let r = curve(theta);
        if !r.is_finite() {
            return Err(parameter("cutout curve must be finite"));
        }
        if r > 0.0 {
            any_positive = true;
            let extent = r * theta.cos().abs().max(theta.sin().abs());
            if extent >= half_side {
                return Err(parameter("cutout curve reaches the square boundary"));
            }
        }
        min_r = min_r.min(r);
    }
    if !any_positive {
        // An everywhere-nonpositive curve bounds no hole; treat it as absent.
        if required {
            return Err(parameter("cutout nodes requested but the curve is nowhere positive"));
        }
        return Ok(None);
    }
    if min_r <= 0.0 {
        return Err(parameter("cutout curve must be strictly positive to bound a hole"));
    }
    Ok(Some(curve))
}

fn cutout_node(curve: &dyn Fn(f64) -> f64, theta: f64) -> Node {
    let r = curve(theta);
    let (sin, cos) = theta.sin_cos();
    // Tangent of θ ↦ r(θ)(cos θ, sin θ), with r'(θ) from a central difference.
    const H: f64 = 1e-6;
    let dr = (curve(theta + H) - curve(theta - H)) / (2.0 * H);
    let outward = [dr * sin + r * cos, -dr * cos + r * sin];
    let len = (outward[0] * outward[0] + outward[1] * outward[1]).sqrt();
    // Material lies outside the curve, so its outward normal points into the hole.
    let normal = vec![0.0 - outward[0] / len, 0.0 - outward[1] / len];
    Node { position: vec![r * cos, r * sin], kind: NodeKind::Dirichlet, normal: Some(normal) }
}

fn sample_square_outline(
    half_side: f64,
    outer: usize,
    neumann_top: bool,
    nodes: &mut Vec<Node>,
) -> Result<(), GeometryError> {
    if outer == 0 {
        return Ok(());
    }
    let h = half_side;
    let side_data = |side: usize, u: f64| -> ([f64; 2], [f64; 2]) {
        match side {
            0 => ([-h + u, -h], [0.0, -1.0]),
            1 => ([h, -h + u], [1.0, 0.0]),
            2 => ([h - u, h], [0.0, 1.0]),
            _ => ([-h, h - u], [-1.0, 0.0]),
        }
    };
    let kind_of = |side: usize| {
        if side == 2 && neumann_top {
            NodeKind::Neumann
        } else {
            NodeKind::Dirichlet
        }
    };
    if !outer.is_multiple_of(4) {
        // Cell-centered equal-arc sampling puts a node exactly on a corner
        // for every count that is not a multiple of four (odd counts hit the
        // far corner, counts ≡ 2 mod 4 hit a near one), where the outward
        // normal is undefined.
        return Err(parameter(format!(
            "{outer} outer nodes would place a node on a square corner; \
             choose a multiple of four"
        )));
    }
    // Build the bottom and right sides, then reflect them through the
    // origin; mirrored coordinates are then exact negations.
    let per_side = outer / 4;
    let mut first_half = Vec::with_capacity(outer / 2);
    for side in 0..2 {
        for i in 0..per_side {
            let u = (i as f64 + 0.5) * 2.0 * h / per_side as f64;
            let (p, n) = side_data(side, u);
            first_half.push(p);
            nodes.push(Node {
                position: p.to_vec(),
                kind: kind_of(side),
                normal: Some(n.to_vec()),
            });
        }
    }
    for (idx, p) in first_half.iter().enumerate() {
        let side = 2 + idx / per_side;
        let (_, n) = side_data(side, 0.0);
        nodes.push(Node { position: mirrored(p), kind: kind_of(side), normal: Some(n.to_vec()) });
    }
    Ok(())
}

/// Unit directions of the spherical Fibonacci spiral.
fn fibonacci_sphere(count: usize) -> Vec<[f64; 3]> {
    let golden_angle = PI * (3.0 - 5.0_f64.sqrt());
    (0..count)
        .map(|k| {
            let z = 1.0 - (2.0 * k as f64 + 1.0) / count as f64;
            let radius = (1.0 - z * z).max(0.0).sqrt();
            let phi = golden_angle * k as f64;
            [radius * phi.cos(), radius * phi.sin(), z]
        })
        .collect()
}

/// Samples the cube `[-half_side, half_side]³` hollowed by two overlapping
/// unit balls centered at `(±√2/2, 0, 0)`.
///
/// Faces carry cell-centered grids (the `x = -half_side` face is tagged
/// Neumann, every other boundary Dirichlet); the cavity surface keeps the
/// Fibonacci samples of each sphere that clear the other ball; interior
/// evaluation points fill the material region by Halton rejection.
pub fn sample_cube_with_two_ball_cavity(
    half_side: f64,
    counts: CubeCavityCounts,
) -> Result<NodeCloud, GeometryError> {
    check_cube_half_side(half_side)?;
    let g = counts.face_divisions;
    if g == 0 {
        return Err(parameter("cube faces need at least one grid division"));
    }
    let h = half_side;
    let mut nodes = Vec::new();
    let coords: Vec<f64> = (0..g).map(|i| -h + (2.0 * i as f64 + 1.0) * h / g as f64).collect();
    for axis in 0..3 {
        for sign in [-1.0, 1.0] {
            let kind =
                if axis == 0 && sign < 0.0 { NodeKind::Neumann } else { NodeKind::Dirichlet };
            let (b, c) = match axis {
                0 => (1, 2),
                1 => (0, 2),
                _ => (0, 1),
            };
            let mut normal = [0.0; 3];
            normal[axis] = sign;
            for vb in &coords {
                for vc in &coords {
                    let mut p = [0.0; 3];
                    p[axis] = sign * h;
                    p[b] = *vb;
                    p[c] = *vc;
                    nodes.push(Node { position: p.to_vec(), kind, normal: Some(normal.to_vec()) });
                }
            }
        }
    }
    let keep_beyond = 1.0 + CAVITY_SEAM_MARGIN;
    for center_x in [FRAC_1_SQRT_2, -FRAC_1_SQRT_2] {
        let other_x = -center_x;
        for q in fibonacci_sphere(counts.cavity_per_sphere) {
            let p = [center_x + q[0], q[1], q[2]];
            let dx = p[0] - other_x;
            let other_dist = (dx * dx + p[1] * p[1] + p[2] * p[2]).sqrt();
            if other_dist <= keep_beyond {
                continue;
            }
            let len = (q[0] * q[0] + q[1] * q[1] + q[2] * q[2]).sqrt();
            // The material's outward normal points into the cavity, at the
            // center of the sphere the node sits on.
            let normal = vec![-q[0] / len, -q[1] / len, -q[2] / len];
            nodes.push(Node {
                position: p.to_vec(),
                kind: NodeKind::Dirichlet,
                normal: Some(normal),
            });
        }
    }
    for p in material_points_cube_cavity(half_side, counts.evaluation)? {
        nodes.push(Node { position: p, kind: NodeKind::Interior, normal: None });
    }
    NodeCloud::new(nodes, 3)
}

/// Equi-angular circle boundary with exact radial normals; even counts come
/// out exactly point-symmetric (the second half of the nodes negates the
/// first).
pub fn sample_circle(radius: f64, count: usize) -> Result<NodeCloud, GeometryError> {
    if !(radius.is_finite() && radius > 0.0) {
        return Err(parameter("circle radius must be positive"));
    }
    if count == 0 {
        return Err(parameter("requested an empty cloud"));
    }
    let mut nodes = Vec::with_capacity(count);
    let explicit = if count.is_multiple_of(2) { count / 2 } else { count };
    for j in 0..explicit {
        let theta = 2.0 * PI * j as f64 / count as f64;
        let (sin, cos) = theta.sin_cos();
        nodes.push(Node {
            position: vec![radius * cos, radius * sin],
            kind: NodeKind::Dirichlet,
            normal: Some(vec![cos, sin]),
        });
    }
    if count.is_multiple_of(2) {
        for j in 0..explicit {
            let p = mirrored(&nodes[j].position);
            let n = mirrored(nodes[j].normal.as_ref().unwrap());
            nodes.push(Node { position: p, kind: NodeKind::Dirichlet, normal: Some(n) });
        }
    }
    NodeCloud::new(nodes, 2)
}

/// Spherical Fibonacci boundary sampling with exact radial normals.
pub fn sample_sphere(radius: f64, count: usize) -> Result<NodeCloud, GeometryError> {
    if !(radius.is_finite() && radius > 0.0) {
        return Err(parameter("sphere radius must be positive"));
    }
    if count == 0 {
        return Err(parameter("requested an empty cloud"));
    }
    let nodes = fibonacci_sphere(count)
        .into_iter()
        .map(|q| Node {
            position: vec![radius * q[0], radius * q[1], radius * q[2]],
            kind: NodeKind::Dirichlet,
            normal: Some(q.to_vec()),
        })
        .collect();
    NodeCloud::new(nodes, 3)
}

/// Reorders a point-symmetric cloud so that, within every kind block, node
/// `i` and node `len-1-i` are mirror images through the cloud centroid.
///
/// With that ordering, matrices assembled per block from even functions of
/// the distance are centrosymmetric, and odd-derivative matrices (taken
/// along a fixed direction) are skew-centrosymmetric. The cloud must be
/// invariant under point reflection: positions within [`MIRROR_TOL`], kinds
/// equal, and boundary normals negated.
pub fn symmetric_ordering(cloud: &NodeCloud) -> Result<NodeCloud, GeometryError> {
    let nodes = cloud.nodes();
    let n = nodes.len();
    let dim = cloud.dim();
    let mut centroid = vec![0.0; dim];
    for node in nodes {
        for (k, v) in node.position.iter().enumerate() {
            centroid[k] += v;
        }
    }
    for v in &mut centroid {
        *v /= n as f64;
    }

    let mut partner = vec![usize::MAX; n];
    for i in 0..n {
        if partner[i] != usize::MAX {
            continue;
        }
        let mirror: Vec<f64> = (0..dim).map(|k| 2.0 * centroid[k] - nodes[i].position[k]).collect();
        let mut best: Option<(usize, f64)> = None;
        for (j, node) in nodes.iter().enumerate() {
            if partner[j] != usize::MAX || node.kind != nodes[i].kind {
                continue;
            }
            let d = distance(&node.position, &mirror);
            if d <= MIRROR_TOL && best.is_none_or(|(_, bd)| d < bd) {
                best = Some((j, d));
            }
        }
        let Some((j, _)) = best else {
            return Err(GeometryError::Asymmetric {
                what: format!("node at {:?} has no mirror partner", nodes[i].position),
            });
        };
        if let (Some(ni), Some(nj)) = (&nodes[i].normal, &nodes[j].normal) {
            let flipped: Vec<f64> = ni.iter().map(|v| 0.0 - v).collect();
            if distance(nj, &flipped) > MIRROR_TOL {
                return Err(GeometryError::Asymmetric {
                    what: format!(
                        "normals at {:?} and {:?} are not opposite",
                        nodes[i].position, nodes[j].position
                    ),
                });
            }
        }
        partner[i] = j;
        partner[j] = i;
    }

    let (d_count, n_count, _) = cloud.counts();
    let blocks = [(0, d_count), (d_count, n_count), (d_count + n_count, cloud.interior_count())];
    let mut order = vec![usize::MAX; n];
    for (offset, len) in blocks {
        let mut front = 0;
        let mut placed = vec![false; len];
        for local in 0..len {
            if placed[local] {
                continue;
            }
            let i = offset + local;
            let j = partner[i];
            if j == i {
                // Self-paired node (at the centroid) belongs in the middle.
                order[offset + len / 2] = i;
                placed[local] = true;
                continue;
            }
            debug_assert!(
                (offset..offset + len).contains(&j),
                "mirror partners always share a kind block"
            );
            order[offset + front] = i;
            order[offset + len - 1 - front] = j;
            placed[local] = true;
            placed[j - offset] = true;
            front += 1;
        }
    }
    let reordered: Vec<Node> = order.into_iter().map(|i| nodes[i].clone()).collect();
    NodeCloud::new(reordered, dim)
}

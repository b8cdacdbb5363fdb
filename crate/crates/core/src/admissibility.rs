//! Membership tests for admissible meshes and the mesh aspect ratio.
//!
//! All sign tests are exact floating-point comparisons; a tie counts as a
//! violation.

use std::fmt;

use thiserror::Error;

use crate::geometry::{signed_area_points, triangle_quantities, Point, VertexConfiguration};
use crate::simplicial::ConnectivityComplex;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("complex has {complex} vertices but the configuration has {configuration}")]
pub struct SizeMismatch {
    pub complex: usize,
    pub configuration: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Violation {
    DegenerateTriangle {
        triangle: usize,
    },
    CoincidentVertices {
        first: usize,
        second: usize,
    },
    /// Two triangles meet outside the hull of their shared vertices.
    Overlap {
        first: usize,
        second: usize,
        shared: usize,
    },
    NonPositiveArea {
        triangle: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::DegenerateTriangle { triangle } => {
                write!(f, "degenerate triangle {}", triangle + 1)
            }
            Violation::CoincidentVertices { first, second } => {
                write!(f, "vertices {} and {} coincide", first + 1, second + 1)
            }
            Violation::Overlap {
                first,
                second,
                shared,
            } => write!(
                f,
                "triangles {} and {} overlap ({} shared vertices)",
                first + 1,
                second + 1,
                shared
            ),
            Violation::NonPositiveArea { triangle } => {
                write!(f, "triangle {} has non-positive signed area", triangle + 1)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AdmissibilityReport {
    pub is_geometric_complex: bool,
    pub abstract_complex_matches: bool,
    pub all_areas_positive: bool,
    pub first_violation: Option<Violation>,
    pub min_signed_area: f64,
    pub aspect_ratio: f64,
}

impl AdmissibilityReport {
    pub fn is_admissible(&self) -> bool {
        self.is_geometric_complex && self.abstract_complex_matches
    }

    pub fn is_admissible_oriented(&self) -> bool {
        self.is_admissible() && self.all_areas_positive
    }
}

#[inline]
fn orient(a: Point, b: Point, c: Point) -> f64 {
    (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
}

fn check_size(complex: &ConnectivityComplex, q: &VertexConfiguration) -> Result<(), SizeMismatch> {
    if complex.num_vertices() == q.len() {
        Ok(())
    } else {
        Err(SizeMismatch {
            complex: complex.num_vertices(),
            configuration: q.len(),
        })
    }
}

/// Closed triangles with no common vertex are disjoint: some edge line of
/// one strictly separates the other.
fn disjoint(t1: [Point; 3], t2: [Point; 3]) -> bool {
    let separated_by_edges_of = |a: [Point; 3], b: [Point; 3]| {
        (0..3).any(|l| {
            let (p, q, r) = (a[l], a[(l + 1) % 3], a[(l + 2) % 3]);
            let side = orient(p, q, r);
            b.iter().all(|&x| orient(p, q, x) * side < 0.0)
        })
    };
    separated_by_edges_of(t1, t2) || separated_by_edges_of(t2, t1)
}

/// Ray `u` lies in the closed wedge from `a` to `b` (counter-clockwise, angle < π).
#[inline]
fn in_wedge(u: Point, a: Point, b: Point) -> bool {
    let o = [0.0, 0.0];
    orient(o, a, u) >= 0.0 && orient(o, u, b) >= 0.0
}

fn ccw_wedge(v: Point, p: Point, q: Point) -> (Point, Point) {
    let a = [p[0] - v[0], p[1] - v[1]];
    let b = [q[0] - v[0], q[1] - v[1]];
    if orient([0.0, 0.0], a, b) > 0.0 {
        (a, b)
    } else {
        (b, a)
    }
}

/// Two non-degenerate triangles sharing exactly vertex `v` meet only at `v`.
fn wedges_disjoint(v: Point, others1: [Point; 2], others2: [Point; 2]) -> bool {
    let (a1, b1) = ccw_wedge(v, others1[0], others1[1]);
    let (a2, b2) = ccw_wedge(v, others2[0], others2[1]);
    !(in_wedge(a2, a1, b1) || in_wedge(b2, a1, b1) || in_wedge(a1, a2, b2) || in_wedge(b1, a2, b2))
}

fn pair_ok(
    complex: &ConnectivityComplex,
    q: &VertexConfiguration,
    i: usize,
    j: usize,
) -> (bool, usize) {
    let ti = complex.triangle(i);
    let tj = complex.triangle(j);
    let shared: Vec<usize> = ti.iter().copied().filter(|v| tj.contains(v)).collect();
    let pts = |t: [usize; 3]| [q.point(t[0]), q.point(t[1]), q.point(t[2])];
    let ok = match shared.len() {
        0 => disjoint(pts(ti), pts(tj)),
        1 => {
            let v = shared[0];
            let rest = |t: [usize; 3]| {
                let o: Vec<usize> = t.iter().copied().filter(|&x| x != v).collect();
                [q.point(o[0]), q.point(o[1])]
            };
            wedges_disjoint(q.point(v), rest(ti), rest(tj))
        }
        _ => {
            let a = *ti.iter().find(|v| !shared.contains(v)).unwrap();
            let b = *tj.iter().find(|v| !shared.contains(v)).unwrap();
            let (p0, p1) = (q.point(shared[0]), q.point(shared[1]));
            let sa = orient(p0, p1, q.point(a));
            let sb = orient(p0, p1, q.point(b));
            (sa > 0.0 && sb < 0.0) || (sa < 0.0 && sb > 0.0)
        }
    };
    (ok, shared.len())
}

#[inline]
fn bbox(t: [Point; 3]) -> [f64; 4] {
    let mut b = [
        f64::INFINITY,
        f64::INFINITY,
        f64::NEG_INFINITY,
        f64::NEG_INFINITY,
    ];
    for p in t {
        b[0] = b[0].min(p[0]);
        b[1] = b[1].min(p[1]);
        b[2] = b[2].max(p[0]);
        b[3] = b[3].max(p[1]);
    }
    b
}

/// Membership in the set of admissible meshes with connectivity `complex`.
pub fn is_in_m0(
    complex: &ConnectivityComplex,
    q: &VertexConfiguration,
) -> Result<AdmissibilityReport, SizeMismatch> {
    check_size(complex, q)?;
    let tris = complex.triangles();
    let areas: Vec<f64> = tris
        .iter()
        .map(|t| signed_area_points(q.point(t[0]), q.point(t[1]), q.point(t[2])))
        .collect();
    let min_signed_area = areas.iter().copied().fold(f64::INFINITY, f64::min);
    let all_areas_positive = areas.iter().all(|&a| a > 0.0);
    let aspect = aspect_ratio_unchecked(complex, q);

    let report =
        |geometric: bool, matches: bool, violation: Option<Violation>| AdmissibilityReport {
            is_geometric_complex: geometric,
            abstract_complex_matches: matches,
            all_areas_positive,
            first_violation: violation,
            min_signed_area,
            aspect_ratio: aspect,
        };

    if let Some(k) = areas.iter().position(|&a| a == 0.0) {
        return Ok(report(
            false,
            false,
            Some(Violation::DegenerateTriangle { triangle: k }),
        ));
    }
    // Distinct ids at one position: the collection may still be a geometric
    // complex, but not one whose abstract complex is `complex`.
    let mut order: Vec<usize> = (0..q.len()).collect();
    order.sort_by(|&a, &b| {
        let (pa, pb) = (q.point(a), q.point(b));
        pa[0].total_cmp(&pb[0]).then(pa[1].total_cmp(&pb[1]))
    });
    for w in order.windows(2) {
        if q.point(w[0]) == q.point(w[1]) {
            let (first, second) = (w[0].min(w[1]), w[0].max(w[1]));
            return Ok(report(
                true,
                false,
                Some(Violation::CoincidentVertices { first, second }),
            ));
        }
    }
    let boxes: Vec<[f64; 4]> = tris
        .iter()
        .map(|t| bbox([q.point(t[0]), q.point(t[1]), q.point(t[2])]))
        .collect();
    for i in 0..tris.len() {
        for j in (i + 1)..tris.len() {
            let (bi, bj) = (boxes[i], boxes[j]);
            let boxes_apart = bi[2] < bj[0] || bj[2] < bi[0] || bi[3] < bj[1] || bj[3] < bi[1];
            if boxes_apart {
                continue;
            }
            let (ok, shared) = pair_ok(complex, q, i, j);
            if !ok {
                return Ok(report(
                    false,
                    false,
                    Some(Violation::Overlap {
                        first: i,
                        second: j,
                        shared,
                    }),
                ));
            }
        }
    }
    Ok(report(true, true, None))
}

/// Membership in the set of admissible positively oriented meshes.
pub fn is_in_mplus(
    complex: &ConnectivityComplex,
    q: &VertexConfiguration,
) -> Result<AdmissibilityReport, SizeMismatch> {
    let mut report = is_in_m0(complex, q)?;
    if report.is_admissible() && !report.all_areas_positive {
        let k = complex
            .triangles()
            .iter()
            .position(|t| signed_area_points(q.point(t[0]), q.point(t[1]), q.point(t[2])) <= 0.0)
            .unwrap();
        report.first_violation = Some(Violation::NonPositiveArea { triangle: k });
    }
    Ok(report)
}

fn aspect_ratio_unchecked(complex: &ConnectivityComplex, q: &VertexConfiguration) -> f64 {
    complex
        .triangles()
        .iter()
        .map(|&t| {
            let tq = triangle_quantities(q, t);
            match (tq.inradius, tq.circumradius) {
                (Some(r), Some(rr)) => 2.0 * r / rr,
                _ => 0.0,
            }
        })
        .fold(f64::INFINITY, f64::min)
}

/// Smallest value of `2r/R` over all triangles; 0 if any is degenerate.
pub fn aspect_ratio(
    complex: &ConnectivityComplex,
    q: &VertexConfiguration,
) -> Result<f64, SizeMismatch> {
    check_size(complex, q)?;
    Ok(aspect_ratio_unchecked(complex, q))
}

/// Exhaustive face-pair intersection test, written independently of
/// [`is_in_m0`] for cross-checking it.
pub mod oracle {
    use super::*;

    fn cross3(a: Point, b: Point, c: Point) -> f64 {
        let u = [b[0] - a[0], b[1] - a[1]];
        let v = [c[0] - a[0], c[1] - a[1]];
        u[0] * v[1] - u[1] * v[0]
    }

    fn on_segment(p: Point, a: Point, b: Point) -> bool {
        cross3(a, b, p) == 0.0
            && p[0] >= a[0].min(b[0])
            && p[0] <= a[0].max(b[0])
            && p[1] >= a[1].min(b[1])
            && p[1] <= a[1].max(b[1])
    }

    fn in_closed_triangle(p: Point, a: Point, b: Point, c: Point) -> bool {
        let l0 = cross3(b, c, p);
        let l1 = cross3(c, a, p);
        let l2 = cross3(a, b, p);
        (l0 >= 0.0 && l1 >= 0.0 && l2 >= 0.0) || (l0 <= 0.0 && l1 <= 0.0 && l2 <= 0.0)
    }

    fn segments_meet(a: Point, b: Point, c: Point, d: Point) -> bool {
        let d1 = cross3(c, d, a);
        let d2 = cross3(c, d, b);
        let d3 = cross3(a, b, c);
        let d4 = cross3(a, b, d);
        if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
            && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
        {
            return true;
        }
        on_segment(a, c, d) || on_segment(b, c, d) || on_segment(c, a, b) || on_segment(d, a, b)
    }

    /// Segments `p-a` and `p-b` sharing endpoint `p` meet elsewhere.
    fn segments_overlap_from(p: Point, a: Point, b: Point) -> bool {
        let u = [a[0] - p[0], a[1] - p[1]];
        let v = [b[0] - p[0], b[1] - p[1]];
        u[0] * v[1] - u[1] * v[0] == 0.0 && u[0] * v[0] + u[1] * v[1] > 0.0
    }

    /// `true` when every pair of faces meets exactly in the hull of the
    /// vertices they share.
    pub fn brute_force_intersection_oracle(
        complex: &ConnectivityComplex,
        q: &VertexConfiguration,
    ) -> bool {
        if complex.num_vertices() != q.len() {
            return false;
        }
        let p = |i: usize| q.point(i);
        let verts: Vec<usize> = (0..q.len()).collect();
        let edges: Vec<[usize; 2]> = complex.edges().collect();
        let tris = complex.triangles();

        for t in tris {
            if cross3(p(t[0]), p(t[1]), p(t[2])) == 0.0 {
                return false;
            }
        }
        for &i in &verts {
            for &j in &verts {
                if i < j && p(i) == p(j) {
                    return false;
                }
            }
        }
        for &v in &verts {
            for e in &edges {
                if !e.contains(&v) && on_segment(p(v), p(e[0]), p(e[1])) {
                    return false;
                }
            }
            for t in tris {
                if !t.contains(&v) && in_closed_triangle(p(v), p(t[0]), p(t[1]), p(t[2])) {
                    return false;
                }
            }
        }
        for (k, e) in edges.iter().enumerate() {
            for f in &edges[k + 1..] {
                let common: Vec<usize> = e.iter().copied().filter(|v| f.contains(v)).collect();
                match common.len() {
                    0 => {
                        if segments_meet(p(e[0]), p(e[1]), p(f[0]), p(f[1])) {
                            return false;
                        }
                    }
                    _ => {
                        let c = common[0];
                        let a = if e[0] == c { e[1] } else { e[0] };
                        let b = if f[0] == c { f[1] } else { f[0] };
                        if segments_overlap_from(p(c), p(a), p(b)) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::oracle::brute_force_intersection_oracle;
    use super::*;
    use crate::fixtures;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn cross_mesh_is_admissible() {
        let (c, q) = fixtures::cross_mesh();
        let r = is_in_mplus(&c, &q).unwrap();
        assert!(r.is_admissible_oriented(), "{r:?}");
        assert!(brute_force_intersection_oracle(&c, &q));
        assert!(r.first_violation.is_none());
        assert_eq!(r.min_signed_area, 1.0);
    }

    #[test]
    fn vertex_pushed_into_non_incident_triangle() {
        let (c, q) = fixtures::cross_mesh();
        // vertex 1 moved inside triangle [2,3,5]
        let mut pts = q.points().to_vec();
        pts[0] = [0.6, 0.1];
        let q = VertexConfiguration::new(pts).unwrap();
        let r = is_in_m0(&c, &q).unwrap();
        assert!(!r.is_admissible());
        assert!(matches!(r.first_violation, Some(Violation::Overlap { .. })));
        assert!(!brute_force_intersection_oracle(&c, &q));
    }

    #[test]
    fn shared_edge_with_both_on_one_side() {
        let c = ConnectivityComplex::from_matrix(4, &[[1, 2, 3], [2, 1, 4]]).unwrap();
        let good = VertexConfiguration::new(vec![[0.0, 0.0], [1.0, 0.0], [0.3, 1.0], [0.6, -1.0]])
            .unwrap();
        assert!(is_in_mplus(&c, &good).unwrap().is_admissible_oriented());
        let bad =
            VertexConfiguration::new(vec![[0.0, 0.0], [1.0, 0.0], [0.3, 1.0], [0.6, 0.5]]).unwrap();
        let r = is_in_m0(&c, &bad).unwrap();
        assert!(!r.is_admissible());
        assert_eq!(
            r.first_violation,
            Some(Violation::Overlap {
                first: 0,
                second: 1,
                shared: 2
            })
        );
        assert!(!brute_force_intersection_oracle(&c, &bad));
    }

    #[test]
    fn counterexample_pair_is_oriented_admissible() {
        let (c, q, qt) = fixtures::disconnected_pair();
        for x in [&q, &qt] {
            let r = is_in_mplus(&c, x).unwrap();
            assert!(r.is_admissible_oriented(), "{r:?}");
            assert!(brute_force_intersection_oracle(&c, x));
        }
    }

    #[test]
    fn reflection_flips_orientation() {
        let (c, q) = fixtures::cross_mesh();
        let m = q.map(|p| [-p[0], p[1]]);
        let r = is_in_mplus(&c, &m).unwrap();
        assert!(r.is_admissible());
        assert!(!r.all_areas_positive);
        assert!(matches!(
            r.first_violation,
            Some(Violation::NonPositiveArea { .. })
        ));
        // the point reflection is a rotation by π
        let pr = q.map(|p| [-p[0], -p[1]]);
        assert!(is_in_mplus(&c, &pr).unwrap().is_admissible_oriented());
    }

    #[test]
    fn coincident_vertices_are_reported() {
        let (c, q, _) = fixtures::disconnected_pair();
        let mut pts = q.points().to_vec();
        pts[3] = pts[2];
        let q = VertexConfiguration::new(pts).unwrap();
        let r = is_in_m0(&c, &q).unwrap();
        assert!(!r.is_admissible());
        assert!(!brute_force_intersection_oracle(&c, &q));
    }

    #[test]
    fn degenerate_triangle_is_inadmissible() {
        let c = ConnectivityComplex::from_matrix(3, &[[1, 2, 3]]).unwrap();
        let q = VertexConfiguration::new(vec![[0.0, 0.0], [1.0, 0.0], [2.0, 0.0]]).unwrap();
        let r = is_in_m0(&c, &q).unwrap();
        assert_eq!(
            r.first_violation,
            Some(Violation::DegenerateTriangle { triangle: 0 })
        );
        assert!(!brute_force_intersection_oracle(&c, &q));
    }

    #[test]
    fn collinear_overlap_of_edges_from_shared_vertex() {
        // two triangles sharing vertex 1, with edges 1-2 and 1-4 on one ray
        let c = ConnectivityComplex::from_matrix(5, &[[1, 2, 3], [1, 5, 4]]).unwrap();
        let q = VertexConfiguration::new(vec![
            [0.0, 0.0],
            [1.0, 0.0],
            [0.0, 1.0],
            [2.0, 0.0],
            [1.0, -1.0],
        ])
        .unwrap();
        assert!(!is_in_m0(&c, &q).unwrap().is_admissible());
        assert!(!brute_force_intersection_oracle(&c, &q));
        let ok = VertexConfiguration::new(vec![
            [0.0, 0.0],
            [1.0, 0.0],
            [0.0, 1.0],
            [2.0, -0.5],
            [1.0, -1.0],
        ])
        .unwrap();
        assert!(is_in_m0(&c, &ok).unwrap().is_admissible());
        assert!(brute_force_intersection_oracle(&c, &ok));
    }

    #[test]
    fn size_mismatch_is_an_error() {
        let (c, _) = fixtures::cross_mesh();
        let q = VertexConfiguration::zeros(4);
        assert!(is_in_m0(&c, &q).is_err());
        assert!(aspect_ratio(&c, &q).is_err());
    }

    fn dyadic(rng: &mut ChaCha8Rng, scale: f64) -> f64 {
        (rng.gen_range(-4i32..=4) as f64) * 0.25 * scale
    }

    #[test]
    fn agrees_with_oracle_on_perturbations() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let meshes = [
            fixtures::cross_mesh(),
            fixtures::unit_square_crossed(),
            fixtures::hex_fan(),
            fixtures::grid(3, 2),
            fixtures::disk(),
        ];
        let mut admissible = 0;
        let mut rejected = 0;
        for trial in 0..1500 {
            let (c, q) = &meshes[trial % meshes.len()];
            let exact = trial % 2 == 0;
            let scale = [0.05, 0.2, 0.6][trial % 3];
            let pts: Vec<Point> = q
                .points()
                .iter()
                .map(|p| {
                    if exact {
                        // round to dyadics so every predicate is exact
                        let snap = |x: f64| (x * 64.0).round() / 64.0;
                        [
                            snap(p[0]) + dyadic(&mut rng, scale),
                            snap(p[1]) + dyadic(&mut rng, scale),
                        ]
                    } else {
                        [
                            p[0] + rng.gen_range(-scale..scale),
                            p[1] + rng.gen_range(-scale..scale),
                        ]
                    }
                })
                .collect();
            let q = VertexConfiguration::new(pts).unwrap();
            let fast = is_in_m0(c, &q).unwrap().is_admissible();
            let slow = brute_force_intersection_oracle(c, &q);
            assert_eq!(fast, slow, "trial {trial}: {:?}", q.points());
            if fast {
                admissible += 1;
            } else {
                rejected += 1;
            }
        }
        assert!(
            admissible > 100 && rejected > 100,
            "{admissible} {rejected}"
        );
    }

    #[test]
    fn verdict_invariant_under_rigid_motion_and_relabeling() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let (c, q) = fixtures::disk();
        for _ in 0..50 {
            let pts: Vec<Point> = q
                .points()
                .iter()
                .map(|p| {
                    [
                        p[0] + rng.gen_range(-0.2..0.2),
                        p[1] + rng.gen_range(-0.2..0.2),
                    ]
                })
                .collect();
            let q = VertexConfiguration::new(pts).unwrap();
            let base = is_in_mplus(&c, &q).unwrap().is_admissible_oriented();
            let moved = q.rigid_motion(
                rng.gen_range(0.0..std::f64::consts::TAU),
                [rng.gen_range(-3.0..3.0), 1.0],
            );
            assert_eq!(
                is_in_mplus(&c, &moved).unwrap().is_admissible_oriented(),
                base
            );
            let n = q.len();
            let mut perm: Vec<usize> = (0..n).collect();
            for k in (1..n).rev() {
                perm.swap(k, rng.gen_range(0..=k));
            }
            let relabeled = c.relabeled(&perm).unwrap();
            let mut moved_pts = vec![[0.0; 2]; n];
            for v in 0..n {
                moved_pts[perm[v]] = q.point(v);
            }
            let q2 = VertexConfiguration::new(moved_pts).unwrap();
            assert_eq!(
                is_in_mplus(&relabeled, &q2)
                    .unwrap()
                    .is_admissible_oriented(),
                base
            );
        }
    }

    #[test]
    fn small_perturbations_preserve_admissibility() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        let meshes = [fixtures::disk(), fixtures::hex_fan(), fixtures::grid(4, 3)];
        let mut tested = 0;
        while tested < 100 {
            let (c, q) = &meshes[tested % 3];
            let pts: Vec<Point> = q
                .points()
                .iter()
                .map(|p| {
                    [
                        p[0] + rng.gen_range(-0.05..0.05),
                        p[1] + rng.gen_range(-0.05..0.05),
                    ]
                })
                .collect();
            let q = VertexConfiguration::new(pts).unwrap();
            if !is_in_mplus(c, &q).unwrap().is_admissible_oriented() {
                continue;
            }
            tested += 1;
            let min_h = c
                .triangles()
                .iter()
                .flat_map(|&t| triangle_quantities(&q, t).heights.unwrap())
                .fold(f64::INFINITY, f64::min);
            let eps = 1e-9 * min_h;
            for _ in 0..10 {
                let pts: Vec<Point> = q
                    .points()
                    .iter()
                    .map(|p| {
                        [
                            p[0] + rng.gen_range(-eps..eps),
                            p[1] + rng.gen_range(-eps..eps),
                        ]
                    })
                    .collect();
                let q2 = VertexConfiguration::new(pts).unwrap();
                assert!(is_in_mplus(c, &q2).unwrap().is_admissible_oriented());
            }
        }
    }

    #[test]
    fn aspect_ratio_values() {
        let h = 3f64.sqrt() / 2.0;
        let c = ConnectivityComplex::from_matrix(4, &[[1, 2, 3], [2, 4, 3]]).unwrap();
        let q = VertexConfiguration::new(vec![[0.0, 0.0], [1.0, 0.0], [0.5, h], [1.5, h]]).unwrap();
        assert!((aspect_ratio(&c, &q).unwrap() - 1.0).abs() < 1e-14);

        let c1 = ConnectivityComplex::from_matrix(3, &[[1, 2, 3]]).unwrap();
        let right = VertexConfiguration::new(vec![[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]).unwrap();
        // legs 1, 1, hypotenuse sqrt 2: r = A/s, R = abc/(4A)
        let (a, s) = (0.5, 1.0 + 0.5 * 2f64.sqrt());
        let oracle = 2.0 * (a / s) / (2f64.sqrt() / (4.0 * a));
        let got = aspect_ratio(&c1, &right).unwrap();
        assert!((got - oracle).abs() < 1e-14);
        assert!((got - 2.0 * (2f64.sqrt() - 1.0)).abs() < 1e-14);

        let sliver = VertexConfiguration::new(vec![[0.0, 0.0], [1.0, 0.0], [0.5, 1e-3]]).unwrap();
        assert!(aspect_ratio(&c1, &sliver).unwrap() < 0.01);
    }
}

//! Lines meeting the curve: the full census of multi-point lines, the table of
//! maximal secants parallel to the z-axis, and plane-section bound checks.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::curve::{PointClass, PointSet};
use crate::gf::{Elem, Field};
use crate::poly::Form;

use super::conic::Conic;
use super::line::{normalize, Line};
use super::GeometryError;

/// Above this many points the quadratic census is refused.
pub const CENSUS_MAX_POINTS: usize = 20_000;

/// A line with the indices (canonical order) of the curve points on it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveLine {
    pub line: Line,
    pub points: Vec<usize>,
}

impl CurveLine {
    pub fn order(&self) -> usize {
        self.points.len()
    }
}

/// Every line through at least two curve points: lines with three or more
/// points are kept individually, all lines are counted by section size.
#[derive(Debug, Clone)]
pub struct LineCensus {
    rich: Vec<CurveLine>,
    histogram: BTreeMap<usize, u64>,
}

fn pack(v: [Elem; 3]) -> u64 {
    (v[0].encoded() as u64) << 42 | (v[1].encoded() as u64) << 21 | v[2].encoded() as u64
}

/// Normalized direction from affine point `i` to point `j` (P∞ is `(1,0,0)`).
fn direction(f: &Field, pts: &PointSet, i: usize, j: usize) -> [Elem; 3] {
    match (pts.affine(i), pts.affine(j)) {
        (Some(a), Some(b)) => {
            let d = [
                f.sub(b[0], a[0]),
                f.sub(b[1], a[1]),
                f.sub(b[2], a[2]),
                Elem::ZERO,
            ];
            let n = normalize(f, d).expect("distinct points");
            [n[0], n[1], n[2]]
        }
        _ => [Elem::ONE, Elem::ZERO, Elem::ZERO],
    }
}

impl LineCensus {
    pub fn compute(pts: &PointSet) -> Result<LineCensus, GeometryError> {
        let n = pts.len();
        if n > CENSUS_MAX_POINTS {
            return Err(GeometryError::TooManyPoints {
                points: n,
                max: CENSUS_MAX_POINTS,
            });
        }
        let f = &**pts.params().field();
        // a line is recorded from its smallest point index
        let parts: Vec<(BTreeMap<usize, u64>, Vec<CurveLine>)> = (0..pts.affine_count())
            .into_par_iter()
            .map(|i| {
                let mut keyed: Vec<(u64, usize)> = (0..n)
                    .filter(|&j| j != i)
                    .map(|j| (pack(direction(f, pts, i, j)), j))
                    .collect();
                keyed.sort_unstable();
                let mut hist = BTreeMap::new();
                let mut rich = Vec::new();
                for group in keyed.chunk_by(|a, b| a.0 == b.0) {
                    if group[0].1 < i {
                        continue;
                    }
                    *hist.entry(group.len() + 1).or_insert(0) += 1;
                    if group.len() >= 2 {
                        let mut points: Vec<usize> = std::iter::once(i)
                            .chain(group.iter().map(|g| g.1))
                            .collect();
                        points.sort_unstable();
                        let line =
                            Line::through(f, &pts.coords(i), &pts.coords(group[0].1)).unwrap();
                        rich.push(CurveLine { line, points });
                    }
                }
                (hist, rich)
            })
            .collect();
        let mut histogram = BTreeMap::new();
        let mut rich = Vec::new();
        for (h, r) in parts {
            for (k, v) in h {
                *histogram.entry(k).or_insert(0) += v;
            }
            rich.extend(r);
        }
        rich.sort_by(|a, b| a.points.cmp(&b.points));
        Ok(LineCensus { rich, histogram })
    }

    /// Lines with at least three curve points, sorted by their point lists.
    pub fn rich_lines(&self) -> &[CurveLine] {
        &self.rich
    }

    /// Number of lines by section size (sizes ≥ 2).
    pub fn histogram(&self) -> &BTreeMap<usize, u64> {
        &self.histogram
    }

    pub fn max_order(&self) -> usize {
        self.histogram.keys().next_back().copied().unwrap_or(0)
    }

    pub fn lines_of_order(&self, k: usize) -> impl Iterator<Item = &CurveLine> {
        self.rich.iter().filter(move |l| l.order() == k)
    }
}

/// Audit of the secant structure against the census.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SecantAudit {
    /// All lines with the maximal section size q²-q+1, from the census.
    pub maximal_lines_total: u64,
    /// Maximal lines that contain some F_{q²}-rational point.
    pub maximal_lines_with_subfield_points: u64,
    /// Maximal lines not parallel to the z-axis.
    pub maximal_lines_not_z_parallel: u64,
    /// Generic points lying on more than one maximal line.
    pub multiply_covered_points: u64,
    pub max_line_section: usize,
    /// Distinct lines through two subfield points, and their largest section.
    pub subfield_pair_lines: u64,
    pub subfield_pair_max_section: usize,
    pub subfield_pair_lines_with_generic_points: u64,
}

/// The maximal secants parallel to the z-axis, partitioning the generic points.
#[derive(Debug, Clone)]
pub struct SecantTable {
    order: usize,
    secants: Vec<CurveLine>,
    point_secant: Vec<Option<u32>>,
    census: Option<LineCensus>,
    audit: Option<SecantAudit>,
}

impl SecantTable {
    /// Maximal section size `q² - q + 1`.
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn secants(&self) -> &[CurveLine] {
        &self.secants
    }

    pub fn len(&self) -> usize {
        self.secants.len()
    }

    pub fn is_empty(&self) -> bool {
        self.secants.is_empty()
    }

    /// Index of the secant through point `i`, if it is generic.
    pub fn secant_of(&self, i: usize) -> Option<usize> {
        self.point_secant
            .get(i)
            .copied()
            .flatten()
            .map(|s| s as usize)
    }

    pub fn census(&self) -> Option<&LineCensus> {
        self.census.as_ref()
    }

    pub fn audit(&self) -> Option<&SecantAudit> {
        self.audit.as_ref()
    }

    /// Largest number of curve points on a line, from the census when present.
    pub fn max_line_section(&self) -> usize {
        self.census.as_ref().map_or(self.order, |c| c.max_order())
    }

    /// Sum of section sizes over the table.
    pub fn covered_points(&self) -> usize {
        self.secants.iter().map(|s| s.order()).sum()
    }
}

/// Groups the generic points along z-parallel lines, checks each group is a
/// maximal secant, and (when the point set is small enough) audits the result
/// against the full line census.
pub fn secant_classification(pts: &PointSet) -> Result<SecantTable, GeometryError> {
    let params = pts.params();
    let f = &**params.field();
    let order = params.secant_order() as usize;
    let mut secants = Vec::new();
    let mut point_secant = vec![None; pts.len()];
    let aff = pts.affine_points();
    let mut start = 0;
    while start < aff.len() {
        let [x, y, _] = aff[start];
        let mut end = start;
        while end < aff.len() && aff[end][0] == x && aff[end][1] == y {
            end += 1;
        }
        if pts.class(start) == PointClass::Generic {
            let points: Vec<usize> = (start..end).collect();
            if points.len() != order || points.iter().any(|&i| pts.class(i) != PointClass::Generic)
            {
                return Err(GeometryError::SecantStructure(format!(
                    "z-parallel line through point {start} carries {} points",
                    points.len()
                )));
            }
            let a = [Elem::ONE, Elem::ZERO, Elem::ZERO, f.neg(x)];
            let b = [Elem::ZERO, Elem::ONE, Elem::ZERO, f.neg(y)];
            let line = Line::from_forms(f, a, b)?;
            for &i in &points {
                point_secant[i] = Some(secants.len() as u32);
            }
            secants.push(CurveLine { line, points });
        }
        start = end;
    }
    let mut table = SecantTable {
        order,
        secants,
        point_secant,
        census: None,
        audit: None,
    };
    if pts.len() <= CENSUS_MAX_POINTS {
        let census = LineCensus::compute(pts)?;
        table.audit = Some(audit(pts, &table, &census)?);
        table.census = Some(census);
    }
    Ok(table)
}

fn audit(
    pts: &PointSet,
    table: &SecantTable,
    census: &LineCensus,
) -> Result<SecantAudit, GeometryError> {
    let f = &**pts.params().field();
    let order = table.order;
    let z_dir = [Elem::ZERO, Elem::ZERO, Elem::ONE, Elem::ZERO];
    let mut seen: Vec<Option<u32>> = vec![None; pts.len()];
    let mut total = 0;
    let mut with_subfield = 0;
    let mut not_z = 0;
    for l in census.lines_of_order(order) {
        total += 1;
        if l.points
            .iter()
            .any(|&i| pts.class(i) != PointClass::Generic)
        {
            with_subfield += 1;
        }
        if l.line.direction(f) != Some(z_dir) {
            not_z += 1;
        }
        for &i in &l.points {
            if pts.class(i) != PointClass::Generic {
                continue;
            }
            seen[i] = Some(seen[i].unwrap_or(0) + 1);
        }
    }
    let multiply_covered = seen.iter().filter(|c| c.is_some_and(|c| c > 1)).count() as u64;
    // lines through two subfield points
    let sub: Vec<usize> = (0..pts.len())
        .filter(|&i| pts.class(i) != PointClass::Generic)
        .collect();
    let mut lines = std::collections::BTreeSet::new();
    for (a, &i) in sub.iter().enumerate() {
        for &j in &sub[a + 1..] {
            lines.insert(Line::through(f, &pts.coords(i), &pts.coords(j))?);
        }
    }
    let mut max_section = 0;
    let mut with_generic = 0;
    for l in &lines {
        let on: Vec<usize> = (0..pts.len())
            .filter(|&i| l.contains(f, &pts.coords(i)))
            .collect();
        max_section = max_section.max(on.len());
        if on.iter().any(|&i| pts.class(i) == PointClass::Generic) {
            with_generic += 1;
        }
    }
    Ok(SecantAudit {
        maximal_lines_total: total,
        maximal_lines_with_subfield_points: with_subfield,
        maximal_lines_not_z_parallel: not_z,
        multiply_covered_points: multiply_covered,
        max_line_section: census.max_order(),
        subfield_pair_lines: lines.len() as u64,
        subfield_pair_max_section: max_section,
        subfield_pair_lines_with_generic_points: with_generic,
    })
}

/// Outcome of checking `|X ∩ GK| ≤ α(q²-q+1)` for lines (α = 1) or conics (α = 2).
#[derive(Debug, Clone, Serialize)]
pub struct SectionBoundReport {
    pub alpha: u32,
    pub bound: usize,
    pub exhaustive: bool,
    pub checked: u64,
    pub max_observed: usize,
    /// Point indices of a section attaining the maximum.
    pub witness: Vec<usize>,
}

/// Lines (α = 1) are checked exhaustively through the census. Conics (α = 2)
/// are sampled through random coplanar curve points, plus the line pairs
/// formed by two coplanar maximal secants.
pub fn plane_section_bound_check(
    pts: &PointSet,
    table: &SecantTable,
    alpha: u32,
    samples: usize,
    seed: u64,
) -> Result<SectionBoundReport, GeometryError> {
    let f = &**pts.params().field();
    let bound = alpha as usize * table.order();
    match alpha {
        1 => {
            let census = table.census().ok_or(GeometryError::TooManyPoints {
                points: pts.len(),
                max: CENSUS_MAX_POINTS,
            })?;
            let best = census.rich_lines().iter().max_by_key(|l| l.order());
            let (max_observed, witness) = match best {
                Some(l) => (l.order(), l.points.clone()),
                None => (2, vec![0, 1]),
            };
            let checked = census.histogram().values().sum();
            let report = SectionBoundReport {
                alpha,
                bound,
                exhaustive: true,
                checked,
                max_observed,
                witness,
            };
            if max_observed > bound {
                return Err(GeometryError::BoundViolation {
                    bound,
                    found: max_observed,
                    witness: report.witness,
                });
            }
            Ok(report)
        }
        2 => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut max_observed = 0;
            let mut witness = Vec::new();
            let mut checked = 0;
            let mut consider = |on: Vec<usize>| -> Result<(), GeometryError> {
                checked += 1;
                if on.len() > bound {
                    return Err(GeometryError::BoundViolation {
                        bound,
                        found: on.len(),
                        witness: on,
                    });
                }
                if on.len() > max_observed {
                    max_observed = on.len();
                    witness = on;
                }
                Ok(())
            };
            // two parallel maximal secants span a plane and form a line pair
            if table.len() >= 2 {
                let a = &table.secants()[0];
                let b = &table.secants()[1];
                if let Some(c) = Conic::line_pair(f, &a.line, &b.line) {
                    consider(points_on(pts, |p| c.contains(f, p)))?;
                }
            }
            let n = pts.len();
            let mut attempts = 0;
            let mut done = 0;
            while done < samples && attempts < samples * 20 {
                attempts += 1;
                let tri: Vec<usize> = (0..3).map(|_| rng.gen_range(0..n)).collect();
                let Some(plane) =
                    plane_through(f, &tri.iter().map(|&i| pts.coords(i)).collect::<Vec<_>>())
                else {
                    continue;
                };
                let section = points_on(pts, |p| f.dot(&plane, p).is_zero());
                if section.len() < 5 {
                    continue;
                }
                let mut pick: Vec<usize> = tri.clone();
                let mut rest: Vec<usize> = section
                    .iter()
                    .copied()
                    .filter(|i| !tri.contains(i))
                    .collect();
                rest.shuffle(&mut rng);
                pick.extend(rest.into_iter().take(2));
                let scheme =
                    super::ZeroDimScheme::reduced(pick.iter().map(|&i| pts.point(i)).collect())?;
                let Some(c) = Conic::unique_through(f, plane, &scheme) else {
                    continue;
                };
                let on = section
                    .iter()
                    .copied()
                    .filter(|&i| c.contains(f, &pts.coords(i)))
                    .collect();
                consider(on)?;
                done += 1;
            }
            Ok(SectionBoundReport {
                alpha,
                bound,
                exhaustive: false,
                checked,
                max_observed,
                witness,
            })
        }
        _ => Err(GeometryError::Unsupported(format!("alpha = {alpha}"))),
    }
}

fn points_on(pts: &PointSet, pred: impl Fn(&[Elem; 4]) -> bool + Sync) -> Vec<usize> {
    (0..pts.len())
        .into_par_iter()
        .filter(|&i| pred(&pts.coords(i)))
        .collect()
}

/// The plane through three non-collinear points.
pub fn plane_through(f: &Field, pts: &[[Elem; 4]]) -> Option<[Elem; 4]> {
    let m = crate::linalg::Matrix::from_rows(4, pts.iter().map(|p| p.to_vec()).collect());
    let ns = m.nullspace(f);
    if ns.len() != 1 {
        return None;
    }
    normalize(f, [ns[0][0], ns[0][1], ns[0][2], ns[0][3]])
}

/// The linear form of a plane as a [`Form`].
pub fn plane_form(plane: &[Elem; 4]) -> Form {
    Form::linear(*plane)
}

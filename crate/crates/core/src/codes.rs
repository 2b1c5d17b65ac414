//! Evaluation codes: degree-d forms vanishing on a curvilinear scheme E,
//! evaluated at an ordered list B of curve points. The codes studied are the
//! duals, so most questions reduce to linear dependencies among columns.

use std::path::Path;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::curve::{CurveError, CurveParams, PointClass, PointSet, ProjectivePoint};
use crate::geometry::{
    cohomology_defect, condition_matrix, curve_section_dimension, section_formula, GeometryError,
    Line, SecantTable, ZeroDimScheme,
};
use crate::gf::{Elem, Field};
use crate::io::{matrix_text, write_atomic, write_json, IoError};
use crate::linalg::{Echelon, Matrix};
use crate::poly::{eval_monomials, monomial_count};

/// Largest generator matrix (entries) that is ever materialized.
pub const MAX_DENSE_ENTRIES: usize = 50_000_000;

#[derive(Debug, Error)]
pub enum CodeError {
    #[error("point index {0} is out of range")]
    PointOutOfRange(usize),
    #[error("point {0} is listed twice in B")]
    DuplicatePoint(usize),
    #[error("point {0} of B lies in the support of E")]
    Overlap(usize),
    #[error("point {0} is not an evaluation point of the unpunctured code")]
    NotInB(usize),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("a {rows}x{cols} generator matrix is too large to materialize")]
    TooLarge { rows: usize, cols: usize },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Io(#[from] IoError),
}

/// Which family a code belongs to, with its parameters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum CodeFamilyTag {
    Functional,
    OnePoint {
        m: u32,
    },
    Punctured {
        m: u32,
        s: Vec<usize>,
    },
    /// Points as encoded homogeneous coordinates.
    ThreePoint {
        d: u32,
        a: [u32; 3],
        points: [[u64; 4]; 3],
    },
}

/// Dimension bookkeeping: the rank of the generator matrix against the
/// prediction `h⁰(O_C(d)) - deg(E) + h¹(I_E(d))`.
#[derive(Debug, Clone, Serialize)]
pub struct DimensionLog {
    pub basis_rows: usize,
    pub rank: usize,
    pub deg_e: u32,
    pub h1_e: usize,
    pub h0_curve_formula: i128,
    pub h0_curve_computed: usize,
    pub prediction_formula: i128,
    pub prediction_computed: i128,
}

pub struct EvaluationCode {
    params: CurveParams,
    tag: CodeFamilyTag,
    d: u32,
    e: ZeroDimScheme,
    b: Vec<usize>,
    coords: Vec<[Elem; 4]>,
    /// Rows are forms (coefficients over the degree-d monomials).
    basis: Matrix,
    identity_basis: bool,
    log: DimensionLog,
    warnings: Vec<String>,
    gen: OnceLock<Matrix>,
}

impl std::fmt::Debug for EvaluationCode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "EvaluationCode({:?}, q={}, d={}, n={}, k={})",
            self.tag,
            self.params.q(),
            self.d,
            self.len(),
            self.dimension()
        )
    }
}

impl EvaluationCode {
    pub fn params(&self) -> &CurveParams {
        &self.params
    }

    pub fn field(&self) -> &Field {
        self.params.field()
    }

    pub fn tag(&self) -> &CodeFamilyTag {
        &self.tag
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn e(&self) -> &ZeroDimScheme {
        &self.e
    }

    /// Canonical point indices of the evaluation points, ascending.
    pub fn points(&self) -> &[usize] {
        &self.b
    }

    pub fn len(&self) -> usize {
        self.b.len()
    }

    pub fn is_empty(&self) -> bool {
        self.b.is_empty()
    }

    pub fn dimension(&self) -> usize {
        self.basis.rows()
    }

    pub fn dual_dimension(&self) -> usize {
        self.len() - self.dimension()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn dimension_log(&self) -> &DimensionLog {
        &self.log
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    /// Column position of a canonical point index.
    pub fn column_of(&self, point: usize) -> Option<usize> {
        self.b.binary_search(&point).ok()
    }

    pub fn point_coords(&self, col: usize) -> &[Elem; 4] {
        &self.coords[col]
    }

    pub fn column(&self, col: usize) -> Vec<Elem> {
        if let Some(g) = self.gen.get() {
            return g.column(col);
        }
        let f = self.field();
        let mono = eval_monomials(f, self.d, &self.coords[col]);
        if self.identity_basis {
            mono
        } else {
            (0..self.basis.rows())
                .map(|r| f.dot(self.basis.row(r), &mono))
                .collect()
        }
    }

    pub fn columns(&self, cols: &[usize]) -> Vec<Vec<Elem>> {
        cols.iter().map(|&c| self.column(c)).collect()
    }

    /// Rank of a set of columns.
    pub fn column_rank(&self, cols: &[usize]) -> usize {
        let mut e = Echelon::new(self.dimension());
        for &c in cols {
            e.insert(self.field(), self.column(c));
        }
        e.rank()
    }

    /// The k×n generator matrix, built on first use.
    pub fn gen(&self) -> Result<&Matrix, CodeError> {
        let (k, n) = (self.dimension(), self.len());
        if k * n > MAX_DENSE_ENTRIES {
            return Err(CodeError::TooLarge { rows: k, cols: n });
        }
        Ok(self.gen.get_or_init(|| {
            let cols: Vec<Vec<Elem>> = (0..n).into_par_iter().map(|c| self.column(c)).collect();
            Matrix::from_columns(k, &cols)
        }))
    }
}

/// Rank of `n` streamed columns of length `rows`. Batches are reduced in
/// parallel and merged; the stream stops once the rank is full.
pub fn stream_rank(
    f: &Field,
    rows: usize,
    n: usize,
    col: impl Fn(usize) -> Vec<Elem> + Sync,
) -> usize {
    const CHUNK: usize = 512;
    let group = CHUNK * rayon::current_num_threads().max(1);
    let mut acc = Echelon::new(rows);
    let mut start = 0;
    while start < n && acc.rank() < rows {
        let end = (start + group).min(n);
        let starts: Vec<usize> = (start..end).step_by(CHUNK).collect();
        let parts: Vec<Echelon> = starts
            .into_par_iter()
            .map(|s| {
                let mut e = Echelon::new(rows);
                for j in s..(s + CHUNK).min(end) {
                    if e.rank() == rows {
                        break;
                    }
                    e.insert(f, col(j));
                }
                e
            })
            .collect();
        for p in parts {
            acc.merge(f, p);
        }
        start = end;
    }
    acc.rank()
}

/// Dimension of the code, by streaming rank over the evaluation columns.
pub fn code_dimension(code: &EvaluationCode) -> usize {
    stream_rank(code.field(), code.dimension(), code.len(), |c| {
        code.column(c)
    })
}

/// General functional code: degree-`d` forms through `e`, evaluated at `b`.
pub fn build_code(
    pts: &PointSet,
    b: Vec<usize>,
    d: u32,
    e: ZeroDimScheme,
) -> Result<EvaluationCode, CodeError> {
    build_tagged(pts, b, d, e, CodeFamilyTag::Functional, Vec::new())
}

fn build_tagged(
    pts: &PointSet,
    mut b: Vec<usize>,
    d: u32,
    e: ZeroDimScheme,
    tag: CodeFamilyTag,
    mut warnings: Vec<String>,
) -> Result<EvaluationCode, CodeError> {
    let params = pts.params().clone();
    let f = &**params.field();
    b.sort_unstable();
    if let Some(&i) = b.iter().find(|&&i| i >= pts.len()) {
        return Err(CodeError::PointOutOfRange(i));
    }
    if let Some(w) = b.windows(2).find(|w| w[0] == w[1]) {
        return Err(CodeError::DuplicatePoint(w[0]));
    }
    for s in e.support() {
        if let Some(i) = pts.index_of(&s) {
            if b.binary_search(&i).is_ok() {
                return Err(CodeError::Overlap(i));
            }
        }
    }
    let q = params.q() as u64;
    if (b.len() as u64) <= d as u64 * (q * q * q + q * q) {
        warnings.push(format!(
            "|B| = {} ≤ d·(q³+q²) = {}: the length hypothesis |B| > dc - deg(E) may fail",
            b.len(),
            d as u64 * (q * q * q + q * q)
        ));
    }
    let coords: Vec<[Elem; 4]> = b.par_iter().map(|&i| pts.coords(i)).collect();

    let cols = monomial_count(d);
    let (mut basis, identity_basis) = if e.is_empty() {
        let mut m = Matrix::zeros(cols, cols);
        for i in 0..cols {
            m.set(i, i, Elem::ONE);
        }
        (m, true)
    } else {
        let ns = condition_matrix(f, &e, d).matrix.nullspace(f);
        let mut m = Matrix::from_rows(cols, ns);
        let piv = m.rref(f);
        (
            Matrix::from_rows(cols, (0..piv.len()).map(|r| m.row(r).to_vec()).collect()),
            false,
        )
    };
    let basis_rows = basis.rows();

    let mut code = EvaluationCode {
        params: params.clone(),
        tag,
        d,
        e,
        b,
        coords,
        basis: basis.clone(),
        identity_basis,
        log: DimensionLog {
            basis_rows,
            rank: 0,
            deg_e: 0,
            h1_e: 0,
            h0_curve_formula: 0,
            h0_curve_computed: 0,
            prediction_formula: 0,
            prediction_computed: 0,
        },
        warnings,
        gen: OnceLock::new(),
    };
    let rank = code_dimension(&code);
    if rank < basis_rows {
        // drop forms that vanish on all of B: keep rows independent on a
        // spanning set of columns
        let mut e = Echelon::new(basis_rows);
        let mut span = Vec::new();
        for c in 0..code.len() {
            if e.insert(f, code.column(c)) {
                span.push(c);
                if e.rank() == rank {
                    break;
                }
            }
        }
        let sub = Matrix::from_columns(basis_rows, &code.columns(&span));
        let mut t = sub.transpose();
        let keep = t.rref(f);
        let rows: Vec<Vec<Elem>> = keep.iter().map(|&r| basis.row(r).to_vec()).collect();
        basis = Matrix::from_rows(cols, rows);
        code.basis = basis;
        code.identity_basis = false;
    }

    let deg_e = code.e.degree();
    let h1_e = if code.e.is_empty() {
        0
    } else {
        cohomology_defect(f, &code.e, d).h1
    };
    let h0_curve_formula = section_formula(&params, d);
    let h0_curve_computed = curve_section_dimension(&params, pts, d).computed_rank;
    code.log = DimensionLog {
        basis_rows,
        rank,
        deg_e,
        h1_e,
        h0_curve_formula,
        h0_curve_computed,
        prediction_formula: h0_curve_formula - deg_e as i128 + h1_e as i128,
        prediction_computed: h0_curve_computed as i128 - deg_e as i128 + h1_e as i128,
    };
    Ok(code)
}

/// `C(D, G_m)^⊥` realized by degree-`m` forms at every affine point.
pub fn one_point_dual(pts: &PointSet, m: u32) -> Result<EvaluationCode, CodeError> {
    let mut warnings = Vec::new();
    if m < 2 {
        warnings.push(format!(
            "m = {m} < 2 is outside the minimum-distance statement"
        ));
    }
    build_tagged(
        pts,
        (0..pts.affine_count()).collect(),
        m,
        ZeroDimScheme::empty(),
        CodeFamilyTag::OnePoint { m },
        warnings,
    )
}

/// How the maximal secants fare after puncturing.
#[derive(Debug, Clone, Serialize)]
pub struct SurvivalReport {
    pub m: u32,
    pub regime_ok: bool,
    pub s1: usize,
    pub s2: usize,
    pub secants_total: usize,
    /// Secants keeping at least m+2 evaluation points.
    pub secants_surviving: usize,
    /// `(secant index, points left)` for every secant that lost points.
    pub damaged: Vec<(usize, usize)>,
    /// `(q²-q+1-m)(q+1)(q⁵-q)` as written in the hypothesis.
    pub bound_stated: i128,
    /// `(q²-q+1-m)(q+1)(q⁵-q³)` with the secant count.
    pub bound_secant_count: i128,
    pub hypothesis_stated: bool,
    pub hypothesis_secant_count: bool,
}

/// `C̄_S`: the one-point dual with the points of `s` removed.
pub fn punctured_dual(
    pts: &PointSet,
    table: &SecantTable,
    s: &[usize],
    m: u32,
) -> Result<(EvaluationCode, SurvivalReport), CodeError> {
    let n = pts.affine_count();
    let mut removed = vec![false; n];
    for &i in s {
        if i >= n {
            return Err(CodeError::NotInB(i));
        }
        if removed[i] {
            return Err(CodeError::DuplicatePoint(i));
        }
        removed[i] = true;
    }
    let b: Vec<usize> = (0..n).filter(|&i| !removed[i]).collect();
    let mut sorted = s.to_vec();
    sorted.sort_unstable();
    let code = build_tagged(
        pts,
        b,
        m,
        ZeroDimScheme::empty(),
        CodeFamilyTag::Punctured { m, s: sorted },
        Vec::new(),
    )?;

    let q = pts.params().q() as i128;
    let s1 = s
        .iter()
        .filter(|&&i| pts.class(i) == PointClass::Subfield)
        .count();
    let s2 = s.len() - s1;
    let mut damaged = Vec::new();
    let mut surviving = 0;
    for (k, sec) in table.secants().iter().enumerate() {
        let left = sec.points.iter().filter(|&&i| !removed[i]).count();
        if left < sec.points.len() {
            damaged.push((k, left));
        }
        if left >= m as usize + 2 {
            surviving += 1;
        }
    }
    let head = q * q - q + 1 - m as i128;
    let bound_stated = head * (q + 1) * (q.pow(5) - q);
    let bound_secant_count = head * (q + 1) * (q.pow(5) - q.pow(3));
    let report = SurvivalReport {
        m,
        regime_ok: q < m as i128 && m as i128 <= 2 * (q + 1),
        s1,
        s2,
        secants_total: table.len(),
        secants_surviving: surviving,
        damaged,
        bound_stated,
        bound_secant_count,
        hypothesis_stated: (s2 as i128) < bound_stated,
        hypothesis_secant_count: (s2 as i128) < bound_secant_count,
    };
    Ok((code, report))
}

/// The lines `L_i` spanned by the other two points and their sections.
#[derive(Debug, Clone, Serialize)]
pub struct ThreePointReport {
    #[serde(skip)]
    pub lines: Vec<Line>,
    /// `|L_i ∩ GK|`
    pub sections: [usize; 3],
    /// Columns of the code on `L_i` (points of `B ∩ L_i`).
    pub b_on_lines: [Vec<usize>; 3],
}

/// Three-point code with `E = a₁P₁ + a₂P₂ + a₃P₃`; every hypothesis is gated.
pub fn three_point_code(
    pts: &PointSet,
    p: [[Elem; 4]; 3],
    d: u32,
    a: [u32; 3],
) -> Result<(EvaluationCode, ThreePointReport), CodeError> {
    let params = pts.params();
    let f = &**params.field();
    let gate = |ok: bool, clause: &str| {
        if ok {
            Ok(())
        } else {
            Err(CodeError::Hypothesis(clause.to_string()))
        }
    };
    let mut points = Vec::new();
    for c in p {
        let pt = params
            .point(c)
            .map_err(|_| CodeError::Hypothesis(format!("{c:?} is not a point of the curve")))?;
        gate(!pt.is_infinity(), "the points P_i must be affine")?;
        points.push(pt);
    }
    gate(
        points[0] != points[1] && points[0] != points[2] && points[1] != points[2],
        "the points P_i must be distinct",
    )?;
    let c: Vec<[Elem; 4]> = points.iter().map(|p| *p.coords()).collect();
    gate(
        Matrix::from_rows(4, c.iter().map(|r| r.to_vec()).collect()).rank(f) == 3,
        "P_1, P_2, P_3 must span a plane",
    )?;
    let lines: Vec<Line> = [(1, 2), (0, 2), (0, 1)]
        .iter()
        .map(|&(j, h)| Line::through(f, &c[j], &c[h]).unwrap())
        .collect();
    let z_dir = [Elem::ZERO, Elem::ZERO, Elem::ONE, Elem::ZERO];
    gate(
        lines.iter().all(|l| l.direction(f) != Some(z_dir)),
        "each line P_jP_h must not be parallel to the z axis",
    )?;
    gate(d >= 5, "d ≥ 5")?;
    gate(d < params.q(), "d ≤ q - 1")?;
    gate(a.iter().all(|&x| (1..=d).contains(&x)), "1 ≤ a_i ≤ d")?;
    gate(
        a.iter().sum::<u32>() + 5 <= 3 * d,
        "a_1 + a_2 + a_3 ≤ 3d - 5",
    )?;
    gate(
        a.iter().filter(|&&x| x == d).count() <= 1,
        "a_i = d for at most one index",
    )?;

    let idx: Vec<usize> = points
        .iter()
        .map(|p| pts.index_of(p).expect("enumerated"))
        .collect();
    let b: Vec<usize> = (0..pts.len()).filter(|i| !idx.contains(i)).collect();
    let e = ZeroDimScheme::new(params, points.iter().cloned().zip(a).collect())?;
    let tag = CodeFamilyTag::ThreePoint {
        d,
        a,
        points: [0, 1, 2].map(|i| c[i].map(|x| f.encode(x))),
    };
    let code = build_tagged(pts, b, d, e, tag, Vec::new())?;

    let mut sections = [0; 3];
    let mut b_on_lines: [Vec<usize>; 3] = Default::default();
    for (i, l) in lines.iter().enumerate() {
        let on: Vec<usize> = (0..pts.len())
            .into_par_iter()
            .filter(|&j| l.contains(f, &pts.coords(j)))
            .collect();
        sections[i] = on.len();
        b_on_lines[i] = on.iter().filter_map(|&j| code.column_of(j)).collect();
    }
    Ok((
        code,
        ThreePointReport {
            lines,
            sections,
            b_on_lines,
        },
    ))
}

/// Dual codewords supported inside a set of columns.
#[derive(Debug, Clone)]
pub struct DualSupport {
    pub support: Vec<usize>,
    pub dimension: usize,
    /// Coefficient vectors aligned with `support`.
    pub words: Vec<Vec<Elem>>,
}

impl DualSupport {
    /// Expands a word to length `n`.
    pub fn dense(&self, word: usize, n: usize) -> Vec<Elem> {
        let mut v = vec![Elem::ZERO; n];
        for (&c, &x) in self.support.iter().zip(&self.words[word]) {
            v[c] = x;
        }
        v
    }

    /// Columns where some word is nonzero.
    pub fn union_support(&self) -> Vec<usize> {
        (0..self.support.len())
            .filter(|&i| self.words.iter().any(|w| !w[i].is_zero()))
            .map(|i| self.support[i])
            .collect()
    }
}

pub fn dual_support_space(code: &EvaluationCode, s: &[usize]) -> DualSupport {
    let f = code.field();
    if s.is_empty() {
        return DualSupport {
            support: Vec::new(),
            dimension: 0,
            words: Vec::new(),
        };
    }
    let m = Matrix::from_columns(code.dimension(), &code.columns(s));
    let words = m.nullspace(f);
    DualSupport {
        support: s.to_vec(),
        dimension: words.len(),
        words,
    }
}

/// `(dual-support dimension, h¹(I_{E∪S}(d)) - h¹(I_E(d)))`
pub fn dual_support_h1_check(
    code: &EvaluationCode,
    s: &[usize],
) -> Result<(usize, i64), CodeError> {
    let f = code.field();
    let dim = dual_support_space(code, s).dimension;
    let pts: Vec<ProjectivePoint> = s
        .iter()
        .map(|&c| code.params().point(code.coords[c]))
        .collect::<Result<_, _>>()?;
    let z = code.e.union(&ZeroDimScheme::reduced(pts)?)?;
    let h1_z = cohomology_defect(f, &z, code.d).h1 as i64;
    let h1_e = if code.e.is_empty() {
        0
    } else {
        cohomology_defect(f, &code.e, code.d).h1 as i64
    };
    Ok((dim, h1_z - h1_e))
}

#[derive(Debug, Clone, Serialize)]
pub struct CodeSidecar<'a> {
    #[serde(flatten)]
    pub family: &'a CodeFamilyTag,
    pub q: u32,
    pub d: u32,
    pub point_count: usize,
    pub dimension: usize,
    pub e_support: Vec<[u64; 4]>,
    pub l_section_sizes: Option<[usize; 3]>,
}

/// Writes the generator matrix to `path` and the JSON sidecar to `path.json`.
pub fn export_code(
    code: &EvaluationCode,
    path: &Path,
    sections: Option<[usize; 3]>,
) -> Result<(), CodeError> {
    let f = code.field();
    let tag = serde_json::to_string(code.tag()).map_err(IoError::from)?;
    let text = matrix_text(f, code.gen()?, Some(&tag));
    write_atomic(path, text.as_bytes())?;
    let sidecar = CodeSidecar {
        family: code.tag(),
        q: code.params().q(),
        d: code.d,
        point_count: code.len(),
        dimension: code.dimension(),
        e_support: code
            .e
            .support()
            .iter()
            .map(|p| p.coords().map(|x| f.encode(x)))
            .collect(),
        l_section_sizes: sections,
    };
    let mut side = path.as_os_str().to_owned();
    side.push(".json");
    write_json(Path::new(&side), &sidecar)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::secant_classification;

    #[test]
    fn one_point_q2_shapes() {
        let c = CurveParams::new(2).unwrap();
        let pts = c.enumerate_points().unwrap();
        let code = one_point_dual(&pts, 2).unwrap();
        assert_eq!(code.len(), 224);
        assert_eq!(code.dimension(), 10);
        let lin = build_code(&pts, (0..224).collect(), 1, ZeroDimScheme::empty()).unwrap();
        assert_eq!(lin.dimension(), 4);
        let constant = build_code(&pts, (0..224).collect(), 0, ZeroDimScheme::empty()).unwrap();
        assert_eq!(constant.dimension(), 1);
        assert_eq!(code_dimension(&constant), 1);
    }

    #[test]
    fn forms_vanishing_on_b_are_dropped() {
        let c = CurveParams::new(2).unwrap();
        let pts = c.enumerate_points().unwrap();
        let t = secant_classification(&pts).unwrap();
        // three collinear points: linear forms restrict to a 2-dimensional space
        let code = build_code(
            &pts,
            t.secants()[0].points.clone(),
            1,
            ZeroDimScheme::empty(),
        )
        .unwrap();
        assert_eq!(code.dimension(), 2);
        assert_eq!(code.dimension_log().basis_rows, 4);
        assert_eq!(code.gen().unwrap().rank(c.field()), 2);
    }

    #[test]
    fn dual_support_matches_h1() {
        let c = CurveParams::new(2).unwrap();
        let f = c.field();
        let pts = c.enumerate_points().unwrap();
        let t = secant_classification(&pts).unwrap();
        let code = one_point_dual(&pts, 1).unwrap();
        let s: Vec<usize> = t.secants()[3]
            .points
            .iter()
            .map(|&i| code.column_of(i).unwrap())
            .collect();
        let ds = dual_support_space(&code, &s);
        assert_eq!(ds.dimension, 1);
        let g = code.gen().unwrap();
        assert!(g
            .mul_vec(f, &ds.dense(0, code.len()))
            .iter()
            .all(|e| e.is_zero()));
        assert_eq!(dual_support_h1_check(&code, &s).unwrap(), (1, 1));
        assert_eq!(dual_support_space(&code, &[]).dimension, 0);
    }

    #[test]
    fn overlap_rejected() {
        let c = CurveParams::new(2).unwrap();
        let pts = c.enumerate_points().unwrap();
        let e = ZeroDimScheme::reduced(vec![pts.point(5)]).unwrap();
        assert!(matches!(
            build_code(&pts, vec![4, 5], 2, e),
            Err(CodeError::Overlap(5))
        ));
        assert!(matches!(
            build_code(&pts, vec![4, 4], 2, ZeroDimScheme::empty()),
            Err(CodeError::DuplicatePoint(4))
        ));
    }

    #[test]
    fn punctured_survival() {
        let c = CurveParams::new(2).unwrap();
        let pts = c.enumerate_points().unwrap();
        let t = secant_classification(&pts).unwrap();
        let (code, rep) = punctured_dual(&pts, &t, &[], 2).unwrap();
        let plain = one_point_dual(&pts, 2).unwrap();
        assert_eq!(code.gen().unwrap(), plain.gen().unwrap());
        assert!(rep.damaged.is_empty());
        let s = &t.secants()[0].points[..2];
        let (code, rep) = punctured_dual(&pts, &t, s, 1).unwrap();
        assert_eq!(code.len(), 222);
        assert_eq!(rep.damaged, vec![(0, 1)]);
        assert_eq!(rep.secants_surviving, 71);
        assert!(punctured_dual(&pts, &t, &[pts.infinity_index()], 1).is_err());
    }

    #[test]
    fn export_round_trip() {
        let c = CurveParams::new(2).unwrap();
        let pts = c.enumerate_points().unwrap();
        let code = one_point_dual(&pts, 2).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("code.txt");
        export_code(&code, &p, None).unwrap();
        let text = std::fs::read_to_string(&p).unwrap();
        let (_, m) = crate::io::parse_matrix(&text).unwrap();
        assert_eq!(&m, code.gen().unwrap());
        let side: serde_json::Value = serde_json::from_str(
            &std::fs::read_to_string(dir.path().join("code.txt.json")).unwrap(),
        )
        .unwrap();
        assert_eq!(side["family"], "one_point");
        assert_eq!(side["dimension"], 10);
    }
}

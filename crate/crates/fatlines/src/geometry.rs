//! Projective geometry over an exact field: points and hyperplanes of P² / P³,
//! lines of P³ as canonical form pairs, incidence predicates, seeded generic
//! hyperplanes, and linear charts identifying a hyperplane with P².
//!
//! Points and forms are normalized so the first nonzero coordinate is 1, and a
//! line's two forms are the reduced echelon basis of their row space, so equality
//! of values is equality of the geometric objects.

use crate::exactalg::{FieldSpec, Matrix, Scalar};
use crate::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const RETRY_BUDGET: u32 = 32;
pub(crate) const COEFF_SPAN: i64 = 997;

fn normalize_projective(mut v: Vec<Scalar>) -> Result<Vec<Scalar>> {
    let lead = v
        .iter()
        .position(|s| !s.is_zero())
        .ok_or_else(|| Error::InvariantViolation("zero projective vector".into()))?;
    if let Some(inv) = v[lead].inv() {
        for s in &mut v {
            if !s.is_zero() {
                *s = s.mul(&inv);
            }
        }
    }
    Ok(v)
}

fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    let mut acc = Scalar::zero(a[0].field());
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc = acc.add(&x.mul(y));
        }
    }
    acc
}

/// A point of P^N, N = 2 or 3; first nonzero coordinate normalized to 1.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct HPoint {
    coords: Vec<Scalar>,
}

impl HPoint {
    pub fn new(coords: Vec<Scalar>) -> Result<HPoint> {
        Ok(HPoint {
            coords: normalize_projective(coords)?,
        })
    }

    pub fn from_i64(coords: &[i64], field: FieldSpec) -> Result<HPoint> {
        HPoint::new(coords.iter().map(|&c| Scalar::from_i64(c, field)).collect())
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }
}

/// A hyperplane of P^N given by its linear form; normalized like a point.
/// The coefficient vector (a,b,c,d) and the plane ax+by+cz+dw=0 are used
/// interchangeably (projective duality).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Hyperplane {
    form: Vec<Scalar>,
}

impl Hyperplane {
    pub fn new(form: Vec<Scalar>) -> Result<Hyperplane> {
        Ok(Hyperplane {
            form: normalize_projective(form)?,
        })
    }

    pub fn from_i64(form: &[i64], field: FieldSpec) -> Result<Hyperplane> {
        Hyperplane::new(form.iter().map(|&c| Scalar::from_i64(c, field)).collect())
    }

    pub fn form(&self) -> &[Scalar] {
        &self.form
    }

    pub fn contains(&self, p: &HPoint) -> bool {
        dot(&self.form, p.coords()).is_zero()
    }
}

/// A line of P³ as the reduced-echelon pair of forms cutting it out, with two
/// spanning points cached. Canonical forms make equality structural.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Line3 {
    forms: [Hyperplane; 2],
    span_points: [HPoint; 2],
}

impl Line3 {
    pub fn forms(&self) -> &[Hyperplane; 2] {
        &self.forms
    }

    pub fn span_points(&self) -> &[HPoint; 2] {
        &self.span_points
    }

    pub fn contains(&self, p: &HPoint) -> bool {
        self.forms[0].contains(p) && self.forms[1].contains(p)
    }

    pub fn contained_in(&self, h: &Hyperplane) -> bool {
        h.contains(&self.span_points[0]) && h.contains(&self.span_points[1])
    }

    pub fn field(&self) -> FieldSpec {
        self.forms[0].form()[0].field()
    }
}

/// Reduced echelon basis of the row space spanned by two independent vectors.
/// Canonical: any two bases of the same plane reduce to the same pair.
pub(crate) fn rref_pair(mut r0: Vec<Scalar>, mut r1: Vec<Scalar>) -> Result<(Vec<Scalar>, Vec<Scalar>)> {
    let n = r0.len();
    assert_eq!(n, r1.len());
    let c0 = (0..n)
        .find(|&c| !r0[c].is_zero() || !r1[c].is_zero())
        .ok_or(Error::DependentForms)?;
    if r0[c0].is_zero() {
        std::mem::swap(&mut r0, &mut r1);
    }
    let inv = r0[c0].inv().expect("pivot nonzero");
    for s in &mut r0 {
        *s = s.mul(&inv);
    }
    if !r1[c0].is_zero() {
        let f = r1[c0].clone();
        for c in 0..n {
            let t = f.mul(&r0[c]);
            r1[c] = r1[c].sub(&t);
        }
    }
    let c1 = (0..n)
        .find(|&c| !r1[c].is_zero())
        .ok_or(Error::DependentForms)?;
    let inv = r1[c1].inv().expect("pivot nonzero");
    for s in &mut r1 {
        *s = s.mul(&inv);
    }
    if !r0[c1].is_zero() {
        let f = r0[c1].clone();
        for c in 0..n {
            let t = f.mul(&r1[c]);
            r0[c] = r0[c].sub(&t);
        }
    }
    Ok((r0, r1))
}

/// The line h1 ∩ h2; errors when the forms are proportional.
pub fn line_from_planes(h1: &Hyperplane, h2: &Hyperplane) -> Result<Line3> {
    let field = h1.form()[0].field();
    let n = h1.form().len();
    assert_eq!(n, 4, "lines live in P3");
    let (r0, r1) = rref_pair(h1.form().to_vec(), h2.form().to_vec())?;
    let m = Matrix::from_rows(field, vec![r0.clone(), r1.clone()]);
    let kernel = m.nullspace();
    debug_assert_eq!(kernel.len(), 2);
    let p0 = HPoint::new(kernel[0].clone())?;
    let p1 = HPoint::new(kernel[1].clone())?;
    Ok(Line3 {
        forms: [Hyperplane::new(r0)?, Hyperplane::new(r1)?],
        span_points: [p0, p1],
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MeetResult {
    Point(HPoint),
    Skew,
    Equal,
}

/// Incidence of two lines: the 4×4 matrix of their spanning points is singular
/// exactly when they meet; distinct meeting lines share the unique common zero
/// of their four forms.
pub fn lines_meet(l1: &Line3, l2: &Line3) -> MeetResult {
    if l1 == l2 {
        return MeetResult::Equal;
    }
    let field = l1.field();
    let span = Matrix::from_rows(
        field,
        l1.span_points()
            .iter()
            .chain(l2.span_points())
            .map(|p| p.coords().to_vec())
            .collect(),
    );
    if span.rank() == 4 {
        return MeetResult::Skew;
    }
    let forms = Matrix::from_rows(
        field,
        l1.forms()
            .iter()
            .chain(l2.forms())
            .map(|h| h.form().to_vec())
            .collect(),
    );
    let kernel = forms.nullspace();
    debug_assert_eq!(kernel.len(), 1);
    MeetResult::Point(HPoint::new(kernel[0].clone()).expect("meet point nonzero"))
}

/// The common plane of the lines, if one exists: the nullspace of all spanning
/// points stacked. Pairwise-distinct input required.
pub fn coplanar_witness(lines: &[Line3]) -> Result<Option<Hyperplane>> {
    assert!(!lines.is_empty(), "need at least one line");
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            if lines[i] == lines[j] {
                return Err(Error::DuplicateLine);
            }
        }
    }
    let field = lines[0].field();
    let pts = Matrix::from_rows(
        field,
        lines
            .iter()
            .flat_map(|l| l.span_points().iter().map(|p| p.coords().to_vec()))
            .collect(),
    );
    let kernel = pts.nullspace();
    match kernel.first() {
        None => Ok(None),
        Some(v) => Ok(Some(Hyperplane::new(v.clone())?)),
    }
}

/// The point where a line (not contained in h) crosses the hyperplane h.
pub(crate) fn section_point(line: &Line3, h: &Hyperplane) -> Result<HPoint> {
    if line.contained_in(h) {
        return Err(Error::LineInHyperplane);
    }
    let field = line.field();
    let m = Matrix::from_rows(
        field,
        vec![
            line.forms()[0].form().to_vec(),
            line.forms()[1].form().to_vec(),
            h.form().to_vec(),
        ],
    );
    let kernel = m.nullspace();
    debug_assert_eq!(kernel.len(), 1);
    HPoint::new(kernel[0].clone())
}

/// Seeded draw of a hyperplane that is generic for `avoid`: contains none of the
/// lines and meets them in pairwise-distinct points. Genericity is certified by
/// the explicit checks, not assumed; a tiny field exhausts the retry budget.
pub fn random_hyperplane(seed: u64, field: FieldSpec, avoid: &[Line3]) -> Result<Hyperplane> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RETRY_BUDGET {
        let coeffs: Vec<Scalar> = (0..4)
            .map(|_| Scalar::from_i64(rng.gen_range(-COEFF_SPAN..=COEFF_SPAN), field))
            .collect();
        if coeffs.iter().all(Scalar::is_zero) {
            continue;
        }
        let h = Hyperplane::new(coeffs)?;
        if avoid.iter().any(|l| l.contained_in(&h)) {
            continue;
        }
        let mut pts = Vec::with_capacity(avoid.len());
        for line in avoid {
            pts.push(section_point(line, &h)?);
        }
        let distinct = (0..pts.len()).all(|i| (i + 1..pts.len()).all(|j| pts[i] != pts[j]));
        if distinct {
            return Ok(h);
        }
    }
    Err(Error::GenericityFailure(RETRY_BUDGET))
}

/// A deterministic linear isomorphism h ≅ P²: `rows` is a basis of the rank-3
/// coordinate subspace cut out by h's form, extended to a basis of k⁴ by the
/// first standard vector off the plane. Points map through row-vector action.
#[derive(Debug, Clone)]
pub struct SectionChart {
    hyperplane: Hyperplane,
    rows: Matrix,
    binv_t: Matrix,
}

impl SectionChart {
    pub fn new(h: &Hyperplane) -> Result<SectionChart> {
        let field = h.form()[0].field();
        let form_m = Matrix::from_rows(field, vec![h.form().to_vec()]);
        let plane_basis = form_m.nullspace();
        debug_assert_eq!(plane_basis.len(), 3);
        let pivot = h
            .form()
            .iter()
            .position(|s| !s.is_zero())
            .expect("nonzero form");
        let mut rows = plane_basis.clone();
        let mut e = vec![Scalar::zero(field); 4];
        e[pivot] = Scalar::one(field);
        rows.push(e);
        let b = Matrix::from_rows(field, rows);
        let binv_t = b.invert()?.transpose();
        Ok(SectionChart {
            hyperplane: h.clone(),
            rows: Matrix::from_rows(field, plane_basis),
            binv_t,
        })
    }

    pub fn hyperplane(&self) -> &Hyperplane {
        &self.hyperplane
    }

    /// Chart coordinates of a point lying on the hyperplane.
    pub fn project(&self, p: &HPoint) -> Result<HPoint> {
        let x = self.binv_t.apply(p.coords());
        debug_assert!(
            x[3].is_zero(),
            "projected point must lie on the hyperplane"
        );
        HPoint::new(x[..3].to_vec())
    }

    /// The P³ point of a chart point; lands on the hyperplane by construction.
    pub fn lift(&self, q: &HPoint) -> Result<HPoint> {
        HPoint::new(self.rows.transpose().apply(q.coords()))
    }
}

/// Cuts every line with h, returning the chart and the section points in P²
/// (one per line, in input order).
pub fn hyperplane_section(lines: &[Line3], h: &Hyperplane) -> Result<(SectionChart, Vec<HPoint>)> {
    let chart = SectionChart::new(h)?;
    let mut out = Vec::with_capacity(lines.len());
    for line in lines {
        let p = section_point(line, h)?;
        out.push(chart.project(&p)?);
    }
    Ok((chart, out))
}

//! Degree slices of symbolic powers for configurations of points in P² and
//! lines in P³, and the invariants read off them: α, Hilbert functions,
//! consecutive α-differences, Waldschmidt quotients, and the (α, α₂) type.
//!
//! Every component is a codimension-2 linear subspace cut out by two forms, so
//! the m-th symbolic power is the intersection over components of the ordinary
//! m-th powers (L₁,L₂)^m. Membership in one component's power becomes, after a
//! coordinate change sending L₁,L₂ to the first two variables, the vanishing of
//! every coefficient with low degree in those variables. No primary
//! decomposition is ever needed.

use crate::exactalg::{FieldSpec, Matrix, Scalar};
use crate::geometry::{self, line_from_planes, HPoint, Line3};
use crate::polyspace::{basis_size, MonomialBasis};
use crate::{Error, Result};
use rug::Rational;
use std::collections::HashMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Ambient {
    P2,
    P3,
}

impl Ambient {
    pub fn nvars(self) -> usize {
        match self {
            Ambient::P2 => 3,
            Ambient::P3 => 4,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Ambient::P2 => "P2",
            Ambient::P3 => "P3",
        }
    }
}

/// A point of P² or a line of P³, stored as the canonical reduced-echelon
/// pair of linear forms cutting it out.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct LinearComponent {
    forms: [Vec<Scalar>; 2],
}

impl LinearComponent {
    pub fn new(f1: Vec<Scalar>, f2: Vec<Scalar>) -> Result<LinearComponent> {
        let (r0, r1) = geometry::rref_pair(f1, f2)?;
        Ok(LinearComponent { forms: [r0, r1] })
    }

    pub fn from_i64(f1: &[i64], f2: &[i64], field: FieldSpec) -> Result<LinearComponent> {
        let conv = |f: &[i64]| f.iter().map(|&c| Scalar::from_i64(c, field)).collect();
        LinearComponent::new(conv(f1), conv(f2))
    }

    pub fn forms(&self) -> &[Vec<Scalar>; 2] {
        &self.forms
    }

    pub fn nvars(&self) -> usize {
        self.forms[0].len()
    }

    pub fn field(&self) -> FieldSpec {
        self.forms[0][0].field()
    }

    /// The P³ line this component cuts out. Panics on P² components.
    pub fn to_line(&self) -> Line3 {
        assert_eq!(self.nvars(), 4, "lines need four variables");
        let h0 = geometry::Hyperplane::new(self.forms[0].clone()).expect("canonical form");
        let h1 = geometry::Hyperplane::new(self.forms[1].clone()).expect("canonical form");
        line_from_planes(&h0, &h1).expect("independent canonical forms")
    }

    /// The P² point this component cuts out. Panics on P³ components.
    pub fn point(&self) -> HPoint {
        assert_eq!(self.nvars(), 3, "points need three variables");
        let m = Matrix::from_rows(self.field(), self.forms.to_vec());
        let kernel = m.nullspace();
        debug_assert_eq!(kernel.len(), 1);
        HPoint::new(kernel[0].clone()).expect("kernel vector nonzero")
    }

    /// The component cutting out a given P² point: the canonical basis of the
    /// forms vanishing there.
    pub fn through_point(p: &HPoint) -> LinearComponent {
        assert_eq!(p.coords().len(), 3, "expected a P2 point");
        let field = p.coords()[0].field();
        let m = Matrix::from_rows(field, vec![p.coords().to_vec()]);
        let kernel = m.nullspace();
        debug_assert_eq!(kernel.len(), 2);
        LinearComponent::new(kernel[0].clone(), kernel[1].clone())
            .expect("kernel vectors independent")
    }
}

/// A reduced union of points of P² or lines of P³ over one exact field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Configuration {
    ambient: Ambient,
    components: Vec<LinearComponent>,
    label: String,
}

impl Configuration {
    pub fn new(
        ambient: Ambient,
        components: Vec<LinearComponent>,
        label: String,
    ) -> Result<Configuration> {
        if components.is_empty() {
            return Err(Error::SchemaError("configuration has no components".into()));
        }
        let field = components[0].field();
        for (i, c) in components.iter().enumerate() {
            if c.nvars() != ambient.nvars() {
                return Err(Error::SchemaError(format!(
                    "component {i} has {} coefficients, ambient {} needs {}",
                    c.nvars(),
                    ambient.as_str(),
                    ambient.nvars()
                )));
            }
            if c.field() != field {
                return Err(Error::SchemaError(format!(
                    "component {i} uses a different coefficient field"
                )));
            }
        }
        let kind = match ambient {
            Ambient::P2 => "point",
            Ambient::P3 => "line",
        };
        for i in 0..components.len() {
            for j in i + 1..components.len() {
                if components[i] == components[j] {
                    return Err(Error::DuplicateComponent(format!(
                        "components {i} and {j} cut out the same {kind}"
                    )));
                }
            }
        }
        Ok(Configuration {
            ambient,
            components,
            label,
        })
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn components(&self) -> &[LinearComponent] {
        &self.components
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn field(&self) -> FieldSpec {
        self.components[0].field()
    }

    pub fn nvars(&self) -> usize {
        self.ambient.nvars()
    }

    /// The lines of a P³ configuration, in component order.
    pub fn lines(&self) -> Vec<Line3> {
        assert_eq!(self.ambient, Ambient::P3, "lines() needs a P3 configuration");
        self.components.iter().map(|c| c.to_line()).collect()
    }

    /// The points of a P² configuration, in component order.
    pub fn points(&self) -> Vec<HPoint> {
        assert_eq!(self.ambient, Ambient::P2, "points() needs a P2 configuration");
        self.components.iter().map(|c| c.point()).collect()
    }
}

/// The degree-d part of the m-th symbolic power: its defining constraints
/// and the dimension of their kernel.
#[derive(Debug, Clone)]
pub struct DegreeSlice {
    pub config: Configuration,
    pub m: usize,
    pub d: usize,
    pub constraints: Matrix,
    pub dim: usize,
}

/// α(Z) and α(2Z) with minimal-degree witnesses; t = α(2Z) − α(Z) ≥ 1.
#[derive(Debug, Clone)]
pub struct TypeReport {
    pub alpha1: usize,
    pub alpha2: usize,
    pub t: usize,
    pub witness1: Vec<Scalar>,
    pub witness2: Vec<Scalar>,
}

/// Linear conditions on a degree-d coefficient vector equivalent to membership
/// in (L₁,L₂)^m for this component's form pair.
///
/// A coordinate change A with L₁ ↦ y₀, L₂ ↦ y₁ turns membership into "every
/// monomial of F(x(y)) with deg_{y₀,y₁} < m has coefficient zero"; the rows
/// returned are exactly those coefficients as linear functionals, i.e. the
/// low-degree rows of the substitution action of A. The expansion is truncated:
/// terms of (y₀,y₁)-degree ≥ m are dropped as they arise, since multiplying by
/// linear forms never lowers that degree.
pub fn component_constraints(c: &LinearComponent, m: usize, d: usize) -> Matrix {
    assert!(m >= 1);
    let n = c.nvars();
    let field = c.field();

    // invertible M with columns L₁, L₂, then standard vectors off the pivots;
    // A = M⁻¹ sends the form pair to the first two coordinates
    let pivot = |f: &[Scalar]| f.iter().position(|s| !s.is_zero()).expect("nonzero form");
    let p0 = pivot(&c.forms()[0]);
    let p1 = pivot(&c.forms()[1]);
    let mut cols: Vec<Vec<Scalar>> = vec![c.forms()[0].clone(), c.forms()[1].clone()];
    for j in 0..n {
        if j != p0 && j != p1 {
            let mut e = vec![Scalar::zero(field); n];
            e[j] = Scalar::one(field);
            cols.push(e);
        }
    }
    let mut mcols = Matrix::zeros(field, n, n);
    for (j, col) in cols.iter().enumerate() {
        for (i, v) in col.iter().enumerate() {
            if !v.is_zero() {
                mcols.set(i, j, v.clone());
            }
        }
    }
    let a = mcols.invert().expect("pivot minor is a unit");
    // x_i expands to the linear form in column i of A
    let subs: Vec<Vec<Scalar>> = (0..n)
        .map(|i| (0..n).map(|k| a.get(k, i).clone()).collect())
        .collect();

    let basis = MonomialBasis::new(n, d);
    let kept: Vec<Vec<u32>> = (0..basis.len())
        .map(|j| basis.exponents(j).to_vec())
        .filter(|e| ((e[0] + e[1]) as usize) < m)
        .collect();
    let row_of: HashMap<Vec<u32>, usize> = kept
        .iter()
        .enumerate()
        .map(|(r, e)| (e.clone(), r))
        .collect();

    let mut out = Matrix::zeros(field, kept.len(), basis.len());
    for j in 0..basis.len() {
        let mut poly: HashMap<Vec<u32>, Scalar> = HashMap::new();
        poly.insert(vec![0u32; n], Scalar::one(field));
        for (i, &e) in basis.exponents(j).iter().enumerate() {
            for _ in 0..e {
                let mut next: HashMap<Vec<u32>, Scalar> = HashMap::new();
                for (mono, coeff) in &poly {
                    for (k, lv) in subs[i].iter().enumerate() {
                        if lv.is_zero() {
                            continue;
                        }
                        let mut m2 = mono.clone();
                        m2[k] += 1;
                        if ((m2[0] + m2[1]) as usize) >= m {
                            continue;
                        }
                        let term = coeff.mul(lv);
                        next.entry(m2)
                            .and_modify(|s| *s = s.add(&term))
                            .or_insert(term);
                    }
                }
                poly = next;
                if poly.is_empty() {
                    break;
                }
            }
            if poly.is_empty() {
                break;
            }
        }
        for (mono, coeff) in poly {
            if !coeff.is_zero() {
                out.set(row_of[&mono], j, coeff);
            }
        }
    }
    out
}

/// Stacks every component's constraints at degree d; dim is the kernel
/// dimension, i.e. dim (I^(m))_d.
pub fn slice(config: &Configuration, m: usize, d: usize) -> DegreeSlice {
    let mut constraints = component_constraints(&config.components()[0], m, d);
    for c in &config.components()[1..] {
        constraints = constraints.vstack(&component_constraints(c, m, d));
    }
    let dim = constraints.ncols() - constraints.rank_certified();
    DegreeSlice {
        config: config.clone(),
        m,
        d,
        constraints,
        dim,
    }
}

/// Least degree d with (I^(m))_d ≠ 0, plus one kernel witness. The search is
/// capped at m × (component count): the product over components of one form
/// through each, raised to the m-th, lives in degree m·s, so overrunning the
/// cap means a bug, not a hard instance.
pub fn alpha(config: &Configuration, m: usize) -> Result<(usize, Vec<Scalar>)> {
    assert!(m >= 1);
    let bound = m * config.components().len();
    for d in 1..=bound {
        let s = slice(config, m, d);
        if s.dim > 0 {
            let kernel = s.constraints.nullspace();
            debug_assert_eq!(kernel.len(), s.dim);
            let witness = kernel.into_iter().next().expect("positive dimension");
            return Ok((d, witness));
        }
    }
    Err(Error::BoundExceeded { m, bound })
}

/// Hilbert function of the m-th symbolic power's quotient at degree t.
pub fn hilbert(config: &Configuration, m: usize, t: usize) -> usize {
    basis_size(config.nvars(), t) - slice(config, m, t).dim
}

/// Consecutive differences [α₂−α₁, …, α_mmax−α_{mmax−1}].
pub fn alpha_differences(config: &Configuration, mmax: usize) -> Result<Vec<usize>> {
    assert!(mmax >= 2);
    let mut prev = alpha(config, 1)?.0;
    let mut out = Vec::with_capacity(mmax - 1);
    for m in 2..=mmax {
        let cur = alpha(config, m)?.0;
        out.push(cur - prev);
        prev = cur;
    }
    Ok(out)
}

/// The exact quotients α(I^(m))/m for m = 1..mmax; no limit is claimed.
pub fn waldschmidt_estimates(config: &Configuration, mmax: usize) -> Result<Vec<Rational>> {
    assert!(mmax >= 1);
    let mut out = Vec::with_capacity(mmax);
    for m in 1..=mmax {
        let (a, _) = alpha(config, m)?;
        out.push(Rational::from((a as u64, m as u64)));
    }
    Ok(out)
}

/// α at multiplicities 1 and 2 with witnesses; the gap t is always ≥ 1
/// because a minimal form for 2Z has a first partial vanishing on Z in a
/// lower degree.
pub fn type_of(config: &Configuration) -> Result<TypeReport> {
    let (alpha1, witness1) = alpha(config, 1)?;
    let (alpha2, witness2) = alpha(config, 2)?;
    if alpha2 <= alpha1 {
        return Err(Error::InvariantViolation(format!(
            "alpha(2Z) = {alpha2} did not exceed alpha(Z) = {alpha1}"
        )));
    }
    Ok(TypeReport {
        alpha1,
        alpha2,
        t: alpha2 - alpha1,
        witness1,
        witness2,
    })
}

//! Graded coefficient spaces: monomial bases in graded-lex order, the linear
//! action a change of coordinates induces on degree-d coefficient vectors, and
//! restriction of quaternary forms to parametrized lines.
//!
//! Coefficient vectors are dense and every module shares the enumeration
//! defined here. The substitution convention is F ↦ F(x·C) acting on row
//! vectors x, which makes the action covariant: subst(C1·C2, d) =
//! subst(C1, d)·subst(C2, d), and subst(C, 1) = C.

use crate::exactalg::{Matrix, Scalar};
use crate::geometry::Line3;
use crate::{Error, Result};
use std::collections::HashMap;

/// Monomials of fixed degree in `nvars` variables, enumerated once in
/// graded-lex order (exponent tuples lexicographically descending).
#[derive(Debug, Clone)]
pub struct MonomialBasis {
    nvars: usize,
    degree: usize,
    exps: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
}

impl MonomialBasis {
    pub fn new(nvars: usize, degree: usize) -> MonomialBasis {
        assert!(nvars >= 1);
        let mut exps = Vec::with_capacity(basis_size(nvars, degree));
        let mut cur = vec![0u32; nvars];
        fill(&mut exps, &mut cur, 0, degree as u32);
        let index = exps
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect();
        MonomialBasis {
            nvars,
            degree,
            exps,
            index,
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn exponents(&self, i: usize) -> &[u32] {
        &self.exps[i]
    }

    pub fn index_of(&self, exps: &[u32]) -> Option<usize> {
        self.index.get(exps).copied()
    }
}

fn fill(out: &mut Vec<Vec<u32>>, cur: &mut Vec<u32>, pos: usize, remaining: u32) {
    if pos + 1 == cur.len() {
        cur[pos] = remaining;
        out.push(cur.clone());
        return;
    }
    for e in (0..=remaining).rev() {
        cur[pos] = e;
        fill(out, cur, pos + 1, remaining - e);
    }
}

/// C(degree + nvars − 1, nvars − 1), the number of degree-d monomials.
pub fn basis_size(nvars: usize, degree: usize) -> usize {
    let n = (degree + nvars - 1) as u128;
    let k = (nvars - 1) as u128;
    let mut acc: u128 = 1;
    for i in 1..=k {
        acc = acc * (n - k + i) / i;
    }
    acc as usize
}

/// The matrix of F ↦ F(x·C) on degree-d coefficient vectors: column j holds
/// the coefficients of the j-th monomial with each variable x_i replaced by
/// the linear form in column i of C.
pub fn substitution_matrix(change: &Matrix, degree: usize) -> Result<Matrix> {
    let n = change.nrows();
    assert_eq!(n, change.ncols(), "change of coordinates must be square");
    if change.rank() < n {
        return Err(Error::SingularChange);
    }
    let field = change.field();
    let bases: Vec<MonomialBasis> = (0..=degree).map(|k| MonomialBasis::new(n, k)).collect();
    let cols: Vec<Vec<Scalar>> = (0..n)
        .map(|i| (0..n).map(|k| change.get(k, i).clone()).collect())
        .collect();
    let size = bases[degree].len();
    let mut out = Matrix::zeros(field, size, size);
    for j in 0..size {
        let target = bases[degree].exponents(j).to_vec();
        let mut poly = vec![Scalar::one(field)];
        let mut cur = 0usize;
        for (i, &e) in target.iter().enumerate() {
            for _ in 0..e {
                poly = mul_linear(&poly, &bases[cur], &bases[cur + 1], &cols[i]);
                cur += 1;
            }
        }
        for (r, c) in poly.into_iter().enumerate() {
            if !c.is_zero() {
                out.set(r, j, c);
            }
        }
    }
    Ok(out)
}

fn mul_linear(
    poly: &[Scalar],
    from: &MonomialBasis,
    to: &MonomialBasis,
    ell: &[Scalar],
) -> Vec<Scalar> {
    let field = ell[0].field();
    let mut out = vec![Scalar::zero(field); to.len()];
    for (idx, c) in poly.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let e = from.exponents(idx);
        for (v, lv) in ell.iter().enumerate() {
            if lv.is_zero() {
                continue;
            }
            let mut e2 = e.to_vec();
            e2[v] += 1;
            let k = to.index_of(&e2).expect("incremented exponent in next basis");
            out[k] = out[k].add(&c.mul(lv));
        }
    }
    out
}

/// Coefficients of F(s·a + t·b) where a, b span the line: a binary form of
/// degree d listed as s^d, s^{d−1}t, …, t^d. Zero exactly when F vanishes on
/// the line.
pub fn restrict_to_line(coeffs: &[Scalar], line: &Line3) -> Vec<Scalar> {
    let d = (0..)
        .find(|&d| basis_size(4, d) >= coeffs.len())
        .expect("bounded search");
    assert_eq!(
        basis_size(4, d),
        coeffs.len(),
        "coefficient vector length must be a degree-d basis size"
    );
    let field = line.field();
    let a = line.span_points()[0].coords();
    let b = line.span_points()[1].coords();
    let basis = MonomialBasis::new(4, d);
    let mut out = vec![Scalar::zero(field); d + 1];
    for (j, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mut bf = vec![Scalar::one(field)];
        for (i, &e) in basis.exponents(j).iter().enumerate() {
            for _ in 0..e {
                bf = conv_linear(&bf, &a[i], &b[i]);
            }
        }
        for (k, v) in bf.into_iter().enumerate() {
            out[k] = out[k].add(&c.mul(&v));
        }
    }
    out
}

fn conv_linear(bf: &[Scalar], a: &Scalar, b: &Scalar) -> Vec<Scalar> {
    let field = a.field();
    let mut out = vec![Scalar::zero(field); bf.len() + 1];
    for (k, c) in bf.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if !a.is_zero() {
            out[k] = out[k].add(&c.mul(a));
        }
        if !b.is_zero() {
            out[k + 1] = out[k + 1].add(&c.mul(b));
        }
    }
    out
}

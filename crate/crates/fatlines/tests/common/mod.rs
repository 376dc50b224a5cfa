//! Shared test helpers, chiefly an independent route to slice dimensions.
//!
//! The library computes a degree slice of I^(m) by changing coordinates so
//! the component's two forms become variables and reading off which monomial
//! coefficients must vanish. The oracle here never changes coordinates: it
//! writes down the classical differential conditions instead. A form lies in
//! the m-th power of a component's ideal exactly when every partial
//! derivative of order m-1 vanishes along the component; the lower orders
//! follow by the Euler identity as long as the intermediate degrees are
//! invertible in the field, so the oracle insists on characteristic zero or
//! p above the working degree.

#![allow(dead_code)]

use fatlines::configgen::{generate, Family, GenSpec};
use fatlines::exactalg::{FieldSpec, Matrix, Scalar};
use fatlines::geometry::HPoint;
use fatlines::polyspace::{basis_size, restrict_to_line, MonomialBasis};
use fatlines::symbolic::{Ambient, Configuration, LinearComponent};

/// All exponent tuples in nvars variables with total degree exactly total.
pub fn multi_indices(nvars: usize, total: usize) -> Vec<Vec<u32>> {
    let basis = MonomialBasis::new(nvars, total);
    (0..basis.len())
        .map(|i| basis.exponents(i).to_vec())
        .collect()
}

fn falling(e: u32, a: u32) -> i64 {
    let mut out = 1i64;
    for j in 0..a {
        out *= (e - j) as i64;
    }
    out
}

/// The coefficient and exponent of the a-th partial of x^e, or None when the
/// derivative kills the monomial.
fn monomial_derivative(e: &[u32], a: &[u32]) -> Option<(i64, Vec<u32>)> {
    let mut coef = 1i64;
    let mut out = e.to_vec();
    for (i, (&ei, &ai)) in e.iter().zip(a).enumerate() {
        if ei < ai {
            return None;
        }
        coef *= falling(ei, ai);
        out[i] = ei - ai;
    }
    Some((coef, out))
}

fn scalar_pow(base: &Scalar, e: u32) -> Scalar {
    let mut out = Scalar::one(base.field());
    for _ in 0..e {
        out = out.mul(base);
    }
    out
}

fn line_rows(comp: &LinearComponent, m: usize, d: usize, field: FieldSpec) -> Vec<Vec<Scalar>> {
    let line = comp.to_line();
    let basis = MonomialBasis::new(4, d);
    let k = (m - 1).min(d);
    let low = MonomialBasis::new(4, d - k);
    let mut rows = Vec::new();
    for a in multi_indices(4, k) {
        let mut block = vec![vec![Scalar::zero(field); basis.len()]; d - k + 1];
        // Column-major fill: each monomial scatters into every row of the block.
        #[allow(clippy::needless_range_loop)]
        for col in 0..basis.len() {
            let Some((coef, e)) = monomial_derivative(basis.exponents(col), &a) else {
                continue;
            };
            let mut v = vec![Scalar::zero(field); low.len()];
            v[low.index_of(&e).expect("derivative stays in the basis")] =
                Scalar::from_i64(coef, field);
            for (j, val) in restrict_to_line(&v, &line).into_iter().enumerate() {
                if !val.is_zero() {
                    block[j][col] = val;
                }
            }
        }
        rows.extend(block);
    }
    rows
}

fn point_rows(comp: &LinearComponent, m: usize, d: usize, field: FieldSpec) -> Vec<Vec<Scalar>> {
    let point = comp.point();
    let coords = point.coords();
    let basis = MonomialBasis::new(3, d);
    let k = (m - 1).min(d);
    let mut rows = Vec::new();
    for a in multi_indices(3, k) {
        let mut row = vec![Scalar::zero(field); basis.len()];
        for (col, slot) in row.iter_mut().enumerate() {
            let Some((coef, e)) = monomial_derivative(basis.exponents(col), &a) else {
                continue;
            };
            let mut val = Scalar::from_i64(coef, field);
            for (i, &ei) in e.iter().enumerate() {
                val = val.mul(&scalar_pow(&coords[i], ei));
            }
            *slot = val;
        }
        rows.push(row);
    }
    rows
}

/// Slice dimension from derivative and restriction conditions alone.
pub fn oracle_slice_dim(config: &Configuration, m: usize, d: usize) -> usize {
    assert!(m >= 1 && d >= 1);
    let field = config.field();
    if let FieldSpec::GFp(p) = field {
        assert!(
            p > d as u64,
            "derivative conditions need characteristic above the degree"
        );
    }
    let mut rows = Vec::new();
    for comp in config.components() {
        match config.ambient() {
            Ambient::P3 => rows.extend(line_rows(comp, m, d, field)),
            Ambient::P2 => rows.extend(point_rows(comp, m, d, field)),
        }
    }
    let ncols = basis_size(config.ambient().nvars(), d);
    ncols - Matrix::from_rows(field, rows).rank_certified()
}

pub fn random_lines(s: usize, seed: u64, field: FieldSpec) -> Configuration {
    generate(&GenSpec {
        family: Family::RandomLines(s),
        seed,
        field,
    })
    .expect("random draw within budget")
}

pub fn family(family: Family, seed: u64, field: FieldSpec) -> Configuration {
    generate(&GenSpec {
        family,
        seed,
        field,
    })
    .expect("family generation")
}

/// Five points (1, t, t^2) on the conic xz = y^2 with distinct parameters.
/// No three are collinear since a line meets an irreducible conic twice.
pub fn conic_points(field: FieldSpec) -> Configuration {
    let comps = [0i64, 1, 2, 3, 5]
        .iter()
        .map(|&t| {
            let p = HPoint::from_i64(&[1, t, t * t], field).expect("nonzero coords");
            LinearComponent::through_point(&p)
        })
        .collect();
    Configuration::new(Ambient::P2, comps, "five-conic-points".into()).expect("valid config")
}

//! The coordinate-change slice and the derivative/restriction oracle must
//! agree on every dimension they can both compute.

mod common;

use common::{conic_points, family, oracle_slice_dim, random_lines};
use fatlines::configgen::Family;
use fatlines::exactalg::FieldSpec;
use fatlines::symbolic::slice;

fn agree(cfg: &fatlines::symbolic::Configuration, mmax: usize, dmax: usize) {
    for m in 1..=mmax {
        for d in 1..=dmax {
            assert_eq!(
                slice(cfg, m, d).dim,
                oracle_slice_dim(cfg, m, d),
                "{} m={m} d={d}",
                cfg.label()
            );
        }
    }
}

#[test]
fn hundred_random_lines_match_derivative_oracle() {
    for seed in 0..100u64 {
        let cfg = random_lines(1, seed, FieldSpec::Q);
        agree(&cfg, 3, 8);
    }
}

#[test]
fn multi_line_configurations_match_derivative_oracle() {
    agree(&family(Family::SkewPair, 0, FieldSpec::Q), 2, 5);
    agree(&family(Family::Fig2Triple, 0, FieldSpec::Q), 2, 5);
    agree(&family(Family::PseudostarGeneric(4), 11, FieldSpec::Q), 2, 5);
}

#[test]
fn point_configurations_match_derivative_oracle() {
    agree(&family(Family::StarPointsP2(4), 2, FieldSpec::Q), 3, 6);
    agree(&family(Family::CollinearPoints(3), 2, FieldSpec::Q), 3, 6);
    agree(&conic_points(FieldSpec::Q), 3, 6);
}

#[test]
fn large_prime_field_matches_derivative_oracle() {
    let field = FieldSpec::gfp(1009).unwrap();
    for seed in 0..5u64 {
        let cfg = random_lines(1, seed, field);
        agree(&cfg, 3, 6);
    }
    agree(&family(Family::SkewPair, 0, field), 2, 5);
}

#[test]
fn small_prime_field_skips_derivative_oracle_above_characteristic() {
    // The Euler reduction behind the oracle divides by intermediate degrees,
    // so over GF(5) only degrees below 5 can be cross-checked. The slice
    // itself is characteristic-free and still runs at the skipped degrees.
    let field = FieldSpec::gfp(5).unwrap();
    let cfg = random_lines(1, 3, field);
    for m in 1..=3 {
        for d in 1..=8 {
            let dim = slice(&cfg, m, d).dim;
            if d < 5 {
                assert_eq!(dim, oracle_slice_dim(&cfg, m, d), "m={m} d={d}");
            } else {
                assert!(dim <= fatlines::polyspace::basis_size(4, d));
            }
        }
    }
}

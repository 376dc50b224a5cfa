//! Structure detection for configurations: collinearity and star shape for
//! point sets in P², the pseudostar certificate for line sets in P³, a
//! finite-degree ACM consistency check through a generic hyperplane section,
//! and the combined classification report.

use crate::exactalg::Matrix;
use crate::geometry::{
    coplanar_witness, hyperplane_section, random_hyperplane, HPoint, Hyperplane,
};
use crate::symbolic::{
    hilbert, type_of, Ambient, Configuration, LinearComponent, TypeReport,
};
use crate::Result;
use std::collections::BTreeMap;

/// d lines of P² whose pairwise intersections are the given points, each point
/// on exactly two of them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarCertificate {
    pub d: usize,
    pub lines: Vec<Hyperplane>,
}

/// d planes of P³ realizing the lines as their pairwise intersections;
/// `incidence[i]` lists the two plane indices containing line i.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PseudostarCertificate {
    pub d: usize,
    pub planes: Vec<Hyperplane>,
    pub incidence: Vec<[usize; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AcmVerdict {
    ConsistentUpTo(usize),
    FailsAt(usize),
}

/// Degree-by-degree comparison of the first difference of the lines' Hilbert
/// function against the Hilbert function of the generic section points.
/// Finite-degree evidence only; it never claims to prove ACM-ness.
#[derive(Debug, Clone)]
pub struct AcmCertificate {
    pub tmax: usize,
    pub hyperplane: Hyperplane,
    pub comparisons: Vec<(usize, usize)>,
    pub verdict: AcmVerdict,
}

#[derive(Debug, Clone)]
pub enum Structure {
    Coplanar(Hyperplane),
    Pseudostar(PseudostarCertificate),
    Other,
}

#[derive(Debug, Clone)]
pub struct ClassificationReport {
    pub type_report: TypeReport,
    pub structure: Structure,
    pub acm: AcmCertificate,
    pub theorem_consistent: bool,
}

#[derive(Debug, Clone)]
pub enum SectionStructure {
    Collinear(Hyperplane),
    Star(StarCertificate),
    Other,
}

/// What a generic hyperplane section looks like and whether its invariants
/// match the ambient configuration's.
#[derive(Debug, Clone)]
pub struct SectionReport {
    pub hyperplane: Hyperplane,
    pub points: Vec<HPoint>,
    pub structure: SectionStructure,
    pub section_type: TypeReport,
    pub lines_type: TypeReport,
    pub alpha_match: bool,
}

/// The common line of the points, when they are collinear.
pub fn detect_collinear(points: &[HPoint]) -> Option<Hyperplane> {
    assert!(!points.is_empty());
    let field = points[0].coords()[0].field();
    let m = Matrix::from_rows(field, points.iter().map(|p| p.coords().to_vec()).collect());
    let kernel = m.nullspace();
    kernel
        .first()
        .map(|v| Hyperplane::new(v.clone()).expect("kernel vector nonzero"))
}

fn binomial_two_inverse(n: usize) -> Option<usize> {
    let mut d = 3usize;
    while d * (d - 1) / 2 < n {
        d += 1;
    }
    (d * (d - 1) / 2 == n).then_some(d)
}

/// Recognizes the pairwise intersections of d ≥ 3 lines: C(d,2) distinct
/// points, exactly d maximal collinear subsets of size d−1, every point on
/// exactly two of them.
pub fn detect_star_points(points: &[HPoint]) -> Option<StarCertificate> {
    assert!(points.len() >= 3);
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            assert_ne!(points[i], points[j], "points must be pairwise distinct");
        }
    }
    let d = binomial_two_inverse(points.len())?;
    let mut subsets: BTreeMap<Vec<usize>, Hyperplane> = BTreeMap::new();
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let line = detect_collinear(&[points[i].clone(), points[j].clone()])
                .expect("two points are collinear");
            let on: Vec<usize> = (0..points.len())
                .filter(|&k| line.contains(&points[k]))
                .collect();
            if on.len() == d - 1 {
                subsets.insert(on, line);
            }
        }
    }
    if subsets.len() != d {
        return None;
    }
    let mut per_point = vec![0usize; points.len()];
    for on in subsets.keys() {
        for &k in on {
            per_point[k] += 1;
        }
    }
    if per_point.iter().any(|&c| c != 2) {
        return None;
    }
    Some(StarCertificate {
        d,
        lines: subsets.into_values().collect(),
    })
}

/// Recognizes the pairwise intersections of d ≥ 3 planes no three of which
/// share a line. Candidate planes are the spans of meeting line pairs that
/// contain exactly d−1 of the lines; exactly d of them must exist, with every
/// line in exactly two. Those conditions force the plane pair ↔ line map to be
/// a bijection, so no further check is needed.
pub fn detect_pseudostar(config: &Configuration) -> Option<PseudostarCertificate> {
    let lines = config.lines();
    let d = binomial_two_inverse(lines.len())?;
    let mut planes: BTreeMap<Hyperplane, Vec<usize>> = BTreeMap::new();
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            let Ok(Some(h)) = coplanar_witness(&[lines[i].clone(), lines[j].clone()]) else {
                continue;
            };
            let on: Vec<usize> = (0..lines.len())
                .filter(|&k| lines[k].contained_in(&h))
                .collect();
            if on.len() == d - 1 {
                planes.insert(h, on);
            }
        }
    }
    if planes.len() != d {
        return None;
    }
    let mut per_line: Vec<Vec<usize>> = vec![Vec::new(); lines.len()];
    for (idx, on) in planes.values().enumerate() {
        for &k in on {
            per_line[k].push(idx);
        }
    }
    let mut incidence = Vec::with_capacity(lines.len());
    for v in per_line {
        if v.len() != 2 {
            return None;
        }
        incidence.push([v[0], v[1]]);
    }
    Some(PseudostarCertificate {
        d,
        planes: planes.into_keys().collect(),
        incidence,
    })
}

/// The P² configuration cut out by a generic hyperplane: one point component
/// per line, in line order.
pub fn section_configuration(config: &Configuration, h: &Hyperplane) -> Result<Configuration> {
    let lines = config.lines();
    let (_, pts) = hyperplane_section(&lines, h)?;
    let comps = pts.iter().map(LinearComponent::through_point).collect();
    Configuration::new(
        Ambient::P2,
        comps,
        format!("{} ∩ H", config.label()),
    )
}

/// Compares ΔH of the lines against the Hilbert function of a generic plane
/// section for 0 ≤ t ≤ tmax. Agreement everywhere is the finite-degree ACM
/// signal; the first disagreement is reported.
pub fn acm_certificate(config: &Configuration, tmax: usize, seed: u64) -> Result<AcmCertificate> {
    assert!(tmax >= 1);
    let lines = config.lines();
    let h = random_hyperplane(seed, config.field(), &lines)?;
    let section = section_configuration(config, &h)?;
    let mut comparisons = Vec::with_capacity(tmax + 1);
    let mut verdict = AcmVerdict::ConsistentUpTo(tmax);
    let mut prev = 0usize;
    for t in 0..=tmax {
        let cur = hilbert(config, 1, t);
        let delta = cur - prev;
        prev = cur;
        let sec = hilbert(&section, 1, t);
        comparisons.push((delta, sec));
        if delta != sec && matches!(verdict, AcmVerdict::ConsistentUpTo(_)) {
            verdict = AcmVerdict::FailsAt(t);
        }
    }
    Ok(AcmCertificate {
        tmax,
        hyperplane: h,
        comparisons,
        verdict,
    })
}

/// tmax used when the caller does not pick one: component count plus two.
pub fn default_tmax(config: &Configuration) -> usize {
    config.components().len() + 2
}

/// Full report: type, structure (coplanar checked first, then pseudostar),
/// ACM certificate, and both directions of the consistency statement
/// (t=1 ∧ ACM evidence ⇒ recognized structure; recognized structure ⇒ t=1).
pub fn classify(config: &Configuration, tmax: usize, seed: u64) -> Result<ClassificationReport> {
    let type_report = type_of(config)?;
    let lines = config.lines();
    let structure = match coplanar_witness(&lines)? {
        Some(h) => Structure::Coplanar(h),
        None => match detect_pseudostar(config) {
            Some(cert) => Structure::Pseudostar(cert),
            None => Structure::Other,
        },
    };
    let acm = acm_certificate(config, tmax, seed)?;
    let recognized = !matches!(structure, Structure::Other);
    let forward = !(type_report.t == 1 && matches!(acm.verdict, AcmVerdict::ConsistentUpTo(_)))
        || recognized;
    let backward = !recognized || type_report.t == 1;
    Ok(ClassificationReport {
        type_report,
        structure,
        acm,
        theorem_consistent: forward && backward,
    })
}

/// Takes a generic section, classifies the resulting points, and compares the
/// section's type to the configuration's.
pub fn check_bc_section(config: &Configuration, seed: u64) -> Result<SectionReport> {
    let lines = config.lines();
    let h = random_hyperplane(seed, config.field(), &lines)?;
    let (_, points) = hyperplane_section(&lines, &h)?;
    let structure = match detect_collinear(&points) {
        Some(line) => SectionStructure::Collinear(line),
        None => match detect_star_points(&points) {
            Some(cert) => SectionStructure::Star(cert),
            None => SectionStructure::Other,
        },
    };
    let section = section_configuration(config, &h)?;
    let section_type = type_of(&section)?;
    let lines_type = type_of(config)?;
    let alpha_match = section_type.alpha1 == lines_type.alpha1;
    Ok(SectionReport {
        hyperplane: h,
        points,
        structure,
        section_type,
        lines_type,
        alpha_match,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::FieldSpec;
    use crate::geometry::{lines_meet, MeetResult};

    const Q: FieldSpec = FieldSpec::Q;

    fn pt(coords: &[i64]) -> HPoint {
        HPoint::from_i64(coords, Q).unwrap()
    }

    fn plane(form: &[i64]) -> Hyperplane {
        Hyperplane::from_i64(form, Q).unwrap()
    }

    fn lines_config(pairs: &[(&[i64], &[i64])], label: &str) -> Configuration {
        let comps = pairs
            .iter()
            .map(|(f1, f2)| LinearComponent::from_i64(f1, f2, Q).unwrap())
            .collect();
        Configuration::new(Ambient::P3, comps, label.into()).unwrap()
    }

    /// all pairwise intersections of the given planes, as a configuration
    fn plane_arrangement(forms: &[&[i64]], label: &str) -> Configuration {
        let mut pairs = Vec::new();
        for i in 0..forms.len() {
            for j in i + 1..forms.len() {
                pairs.push((forms[i], forms[j]));
            }
        }
        lines_config(&pairs, label)
    }

    #[test]
    fn collinear_detection() {
        let line = detect_collinear(&[pt(&[1, 0, 0]), pt(&[0, 1, 0])]);
        assert_eq!(line, Some(plane(&[0, 0, 1])));
        assert_eq!(
            detect_collinear(&[pt(&[1, 0, 0]), pt(&[0, 1, 0]), pt(&[0, 0, 1])]),
            None
        );
        let on_z = detect_collinear(&[pt(&[1, 0, 0]), pt(&[0, 1, 0]), pt(&[1, 5, 0])]);
        assert_eq!(on_z, Some(plane(&[0, 0, 1])));
    }

    fn star_points(line_forms: &[&[i64]]) -> Vec<HPoint> {
        let mut pts = Vec::new();
        for i in 0..line_forms.len() {
            for j in i + 1..line_forms.len() {
                let c = LinearComponent::from_i64(line_forms[i], line_forms[j], Q).unwrap();
                pts.push(c.point());
            }
        }
        pts
    }

    #[test]
    fn star_point_detection() {
        let forms: [&[i64]; 5] = [&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1], &[1, 2, 3]];
        let pts = star_points(&forms);
        let cert = detect_star_points(&pts).expect("ten star points");
        assert_eq!(cert.d, 5);
        let mut expect: Vec<Hyperplane> = forms.iter().map(|f| plane(f)).collect();
        expect.sort();
        let mut got = cert.lines.clone();
        got.sort();
        assert_eq!(got, expect);

        // triangle
        let tri = detect_star_points(&[pt(&[1, 0, 0]), pt(&[0, 1, 0]), pt(&[0, 0, 1])]);
        assert_eq!(tri.map(|c| c.d), Some(3));

        // four generic points: no integer d
        let four = detect_star_points(&[
            pt(&[1, 0, 0]),
            pt(&[0, 1, 0]),
            pt(&[0, 0, 1]),
            pt(&[1, 1, 1]),
        ]);
        assert!(four.is_none());
    }

    #[test]
    fn collinear_points_are_not_a_star() {
        let pts = vec![pt(&[1, 0, 0]), pt(&[0, 1, 0]), pt(&[1, 1, 0])];
        assert!(detect_star_points(&pts).is_none());
    }

    #[test]
    fn pseudostar_from_four_generic_planes() {
        let cfg = plane_arrangement(
            &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[1, 1, 1, 1]],
            "arrangement4",
        );
        let cert = detect_pseudostar(&cfg).expect("six lines from four planes");
        assert_eq!(cert.d, 4);
        let mut got = cert.planes.clone();
        got.sort();
        let mut expect = vec![
            plane(&[1, 0, 0, 0]),
            plane(&[0, 1, 0, 0]),
            plane(&[0, 0, 1, 0]),
            plane(&[1, 1, 1, 1]),
        ];
        expect.sort();
        assert_eq!(got, expect);
        for pair in &cert.incidence {
            assert_ne!(pair[0], pair[1]);
        }
    }

    #[test]
    fn pseudostar_rejects_skew_and_mixed_triples() {
        let skew = lines_config(
            &[(&[1, 0, 0, 0], &[0, 1, 0, 0]), (&[0, 0, 1, 0], &[0, 0, 0, 1])],
            "skew",
        );
        assert!(detect_pseudostar(&skew).is_none());

        let fig2 = lines_config(
            &[
                (&[1, 0, 0, 0], &[0, 0, 1, 0]),
                (&[0, 1, 0, 0], &[0, 0, 1, 0]),
                (&[1, 0, 0, 0], &[0, 0, 0, 1]),
            ],
            "fig2",
        );
        assert!(detect_pseudostar(&fig2).is_none());
    }

    fn cone_over_star(line_forms: &[&[i64]], label: &str) -> Configuration {
        let mut pairs: Vec<(Vec<i64>, Vec<i64>)> = Vec::new();
        for i in 0..line_forms.len() {
            for j in i + 1..line_forms.len() {
                let mut a = line_forms[i].to_vec();
                let mut b = line_forms[j].to_vec();
                a.push(0);
                b.push(0);
                pairs.push((a, b));
            }
        }
        let comps = pairs
            .iter()
            .map(|(a, b)| LinearComponent::from_i64(a, b, Q).unwrap())
            .collect();
        Configuration::new(Ambient::P3, comps, label.into()).unwrap()
    }

    #[test]
    fn cone_over_star_is_a_pseudostar() {
        // all lines pass through the apex (0,0,0,1), yet the certificate holds
        let apex = pt(&[0, 0, 0, 1]);
        for forms in [
            vec![&[1i64, 0, 0] as &[i64], &[0, 1, 0], &[0, 0, 1]],
            vec![&[1i64, 0, 0] as &[i64], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1]],
        ] {
            let d = forms.len();
            let cfg = cone_over_star(&forms, "cone");
            for l in cfg.lines() {
                assert!(l.contains(&apex));
            }
            let cert = detect_pseudostar(&cfg).expect("cone certificate");
            assert_eq!(cert.d, d);
            for h in &cert.planes {
                assert!(h.contains(&apex));
            }
        }
    }

    #[test]
    fn certificate_planes_reproduce_the_lines() {
        let cfg = plane_arrangement(
            &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[1, 1, 1, 1]],
            "arrangement4",
        );
        let cert = detect_pseudostar(&cfg).unwrap();
        let mut regenerated = Vec::new();
        for i in 0..cert.planes.len() {
            for j in i + 1..cert.planes.len() {
                let l = crate::geometry::line_from_planes(&cert.planes[i], &cert.planes[j])
                    .unwrap();
                regenerated.push(l);
            }
        }
        let mut input = cfg.lines();
        input.sort();
        regenerated.sort();
        assert_eq!(input, regenerated);
    }

    #[test]
    fn skew_pair_fails_acm_at_degree_one() {
        let skew = lines_config(
            &[(&[1, 0, 0, 0], &[0, 1, 0, 0]), (&[0, 0, 1, 0], &[0, 0, 0, 1])],
            "skew",
        );
        let cert = acm_certificate(&skew, 4, 7).unwrap();
        assert_eq!(cert.verdict, AcmVerdict::FailsAt(1));
        assert_eq!(cert.comparisons[0], (1, 1));
        assert_eq!(cert.comparisons[1], (3, 2));
    }

    #[test]
    fn plane_arrangement_passes_acm_comparison() {
        let cfg = plane_arrangement(
            &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[1, 1, 1, 1]],
            "arrangement4",
        );
        let cert = acm_certificate(&cfg, 8, 11).unwrap();
        assert_eq!(cert.verdict, AcmVerdict::ConsistentUpTo(8));
    }

    #[test]
    fn coplanar_lines_pass_acm_comparison() {
        let cfg = lines_config(
            &[
                (&[1, 0, 0, 0], &[0, 1, 0, 0]),
                (&[1, 0, 0, 0], &[0, 0, 1, 0]),
                (&[1, 0, 0, 0], &[0, 1, 1, 2]),
            ],
            "coplanar3",
        );
        let cert = acm_certificate(&cfg, 6, 5).unwrap();
        assert_eq!(cert.verdict, AcmVerdict::ConsistentUpTo(6));
    }

    #[test]
    fn classify_coplanar_pair() {
        let cfg = lines_config(
            &[(&[1, 0, 0, 0], &[0, 1, 0, 0]), (&[1, 0, 0, 0], &[0, 0, 1, 0])],
            "coplanar2",
        );
        let rep = classify(&cfg, default_tmax(&cfg), 1).unwrap();
        assert_eq!((rep.type_report.alpha1, rep.type_report.alpha2), (1, 2));
        assert!(matches!(rep.structure, Structure::Coplanar(_)));
        assert!(rep.theorem_consistent);
    }

    #[test]
    fn classify_plane_arrangement() {
        let cfg = plane_arrangement(
            &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[1, 1, 1, 1]],
            "arrangement4",
        );
        let rep = classify(&cfg, default_tmax(&cfg), 2).unwrap();
        assert_eq!((rep.type_report.alpha1, rep.type_report.alpha2), (3, 4));
        assert!(matches!(rep.structure, Structure::Pseudostar(_)));
        assert!(matches!(rep.acm.verdict, AcmVerdict::ConsistentUpTo(_)));
        assert!(rep.theorem_consistent);
    }

    #[test]
    fn classify_pairwise_meeting_triple_as_other() {
        let cfg = lines_config(
            &[
                (&[1, 0, 0, 0], &[0, 0, 1, 0]),
                (&[0, 1, 0, 0], &[0, 0, 1, 0]),
                (&[1, 0, 0, 0], &[0, 0, 0, 1]),
            ],
            "fig2",
        );
        let rep = classify(&cfg, default_tmax(&cfg), 3).unwrap();
        assert_eq!(rep.type_report.t, 2);
        assert!(matches!(rep.structure, Structure::Other));
        assert!(rep.theorem_consistent);
    }

    #[test]
    fn section_of_arrangement_is_a_star() {
        let cfg = plane_arrangement(
            &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[1, 1, 1, 1]],
            "arrangement4",
        );
        let rep = check_bc_section(&cfg, 4).unwrap();
        match &rep.structure {
            SectionStructure::Star(cert) => assert_eq!(cert.d, 4),
            other => panic!("expected a star section, got {other:?}"),
        }
        assert_eq!(rep.lines_type.alpha1, 3);
        assert_eq!(rep.section_type.alpha1, 3);
        assert!(rep.alpha_match);
    }

    #[test]
    fn section_of_coplanar_lines_is_collinear() {
        let cfg = lines_config(
            &[
                (&[1, 0, 0, 0], &[0, 1, 0, 0]),
                (&[1, 0, 0, 0], &[0, 0, 1, 0]),
                (&[1, 0, 0, 0], &[0, 1, 1, 2]),
            ],
            "coplanar3",
        );
        let rep = check_bc_section(&cfg, 9).unwrap();
        assert!(matches!(rep.structure, SectionStructure::Collinear(_)));
        assert!(rep.alpha_match);
    }

    #[test]
    fn section_of_skew_pair_flags_alpha_mismatch() {
        let cfg = lines_config(
            &[(&[1, 0, 0, 0], &[0, 1, 0, 0]), (&[0, 0, 1, 0], &[0, 0, 0, 1])],
            "skew",
        );
        let rep = check_bc_section(&cfg, 6).unwrap();
        assert!(matches!(rep.structure, SectionStructure::Collinear(_)));
        assert_eq!(rep.section_type.alpha1, 1);
        assert_eq!(rep.lines_type.alpha1, 2);
        assert!(!rep.alpha_match);
    }

    #[test]
    fn arrangement_line_incidences_match_plane_combinatorics() {
        // pairs sharing a plane meet (12 of them); the three opposite pairs
        // are skew because the four planes have no common point
        let cfg = plane_arrangement(
            &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[1, 1, 1, 1]],
            "arrangement4",
        );
        let lines = cfg.lines();
        let mut meets = 0;
        for i in 0..lines.len() {
            for j in i + 1..lines.len() {
                if let MeetResult::Point(_) = lines_meet(&lines[i], &lines[j]) {
                    meets += 1;
                }
            }
        }
        assert_eq!(meets, 12);
    }
}

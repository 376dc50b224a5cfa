//! Seeded generators for the named configuration families and the JSON
//! interchange format for configurations.
//!
//! Every generator is a pure function of (family, seed, field). Random draws
//! use integer coefficients in [−997, 997]; an attempt that produces a
//! degenerate arrangement is retried, and the whole draw fails with
//! DegenerateDraw once the budget of 32 attempts is spent.

use crate::exactalg::{integer_normalized, FieldSpec, Matrix, Scalar};
use crate::symbolic::{Ambient, Configuration, LinearComponent};
use crate::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

const RETRY_BUDGET: u32 = 32;
const COEFF_SPAN: i64 = 997;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    /// pairwise intersection points of d generic lines in P²
    StarPointsP2(usize),
    /// pairwise intersection lines of d generic planes in P³
    PseudostarGeneric(usize),
    /// cone from (0,0,0,1) over the star points of d generic P² lines
    ConeOverStar(usize),
    /// n distinct lines in the plane w = 0
    Coplanar(usize),
    /// the lines (x,y) and (z,w)
    SkewPair,
    /// the lines (x,z), (y,z), (x,w): pairwise incidences 12, 13 but not 23
    Fig2Triple,
    /// n distinct points on the line z = 0 in P²
    CollinearPoints(usize),
    /// s pairwise-distinct lines from independent random plane pairs
    RandomLines(usize),
    /// a configuration document passed through the JSON parser
    ExplicitJSON(String),
}

impl Family {
    /// Family from its public name and one size parameter (line, plane, or
    /// point count, whichever the family is sized by). skew and fig2 take
    /// no parameter.
    pub fn named(name: &str, param: Option<usize>) -> Result<Family> {
        let need = || {
            param.ok_or_else(|| {
                Error::SchemaError(format!("family {name} needs a size parameter"))
            })
        };
        match name {
            "star-points" => Ok(Family::StarPointsP2(need()?)),
            "pseudostar" => Ok(Family::PseudostarGeneric(need()?)),
            "cone" => Ok(Family::ConeOverStar(need()?)),
            "coplanar" => Ok(Family::Coplanar(need()?)),
            "collinear" => Ok(Family::CollinearPoints(need()?)),
            "random" => Ok(Family::RandomLines(need()?)),
            "skew" | "fig2" => {
                if param.is_some() {
                    return Err(Error::SchemaError(format!(
                        "family {name} takes no size parameter"
                    )));
                }
                Ok(if name == "skew" {
                    Family::SkewPair
                } else {
                    Family::Fig2Triple
                })
            }
            other => Err(Error::SchemaError(format!("unknown family {other:?}"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct GenSpec {
    pub family: Family,
    pub seed: u64,
    pub field: FieldSpec,
}

fn draw_vec(rng: &mut ChaCha8Rng, n: usize, field: FieldSpec) -> Vec<Scalar> {
    (0..n)
        .map(|_| Scalar::from_i64(rng.gen_range(-COEFF_SPAN..=COEFF_SPAN), field))
        .collect()
}

fn proportional(a: &[Scalar], b: &[Scalar]) -> bool {
    // rank of the 2×n stack is < 2
    let field = a[0].field();
    Matrix::from_rows(field, vec![a.to_vec(), b.to_vec()]).rank() < 2
}

/// d lines of P², pairwise independent, no three concurrent, and no collinear
/// triple among the intersection points beyond the lines themselves.
fn draw_generic_p2_lines(rng: &mut ChaCha8Rng, d: usize, field: FieldSpec) -> Option<Vec<Vec<Scalar>>> {
    let lines: Vec<Vec<Scalar>> = (0..d).map(|_| draw_vec(rng, 3, field)).collect();
    if lines.iter().any(|l| l.iter().all(Scalar::is_zero)) {
        return None;
    }
    for i in 0..d {
        for j in i + 1..d {
            if proportional(&lines[i], &lines[j]) {
                return None;
            }
        }
    }
    for i in 0..d {
        for j in i + 1..d {
            for k in j + 1..d {
                let m = Matrix::from_rows(
                    field,
                    vec![lines[i].clone(), lines[j].clone(), lines[k].clone()],
                );
                if m.rank() < 3 {
                    return None;
                }
            }
        }
    }
    // points p_ij; a collinear triple must lie on one of the d lines
    let mut pts = Vec::new();
    for i in 0..d {
        for j in i + 1..d {
            let c = LinearComponent::new(lines[i].clone(), lines[j].clone()).ok()?;
            pts.push(c.point());
        }
    }
    for a in 0..pts.len() {
        for b in a + 1..pts.len() {
            for c in b + 1..pts.len() {
                let m = Matrix::from_rows(
                    field,
                    vec![
                        pts[a].coords().to_vec(),
                        pts[b].coords().to_vec(),
                        pts[c].coords().to_vec(),
                    ],
                );
                if m.rank() < 3 {
                    let covered = lines.iter().any(|l| {
                        [&pts[a], &pts[b], &pts[c]].iter().all(|p| {
                            l.iter()
                                .zip(p.coords())
                                .fold(Scalar::zero(field), |acc, (x, y)| acc.add(&x.mul(y)))
                                .is_zero()
                        })
                    });
                    if !covered {
                        return None;
                    }
                }
            }
        }
    }
    Some(lines)
}

fn pair_components(forms: &[Vec<Scalar>]) -> Result<Vec<LinearComponent>> {
    let mut out = Vec::new();
    for i in 0..forms.len() {
        for j in i + 1..forms.len() {
            out.push(LinearComponent::new(forms[i].clone(), forms[j].clone())?);
        }
    }
    Ok(out)
}

pub fn generate(spec: &GenSpec) -> Result<Configuration> {
    let field = spec.field;
    let seed = spec.seed;
    match &spec.family {
        Family::StarPointsP2(d) => {
            let d = *d;
            if d < 3 {
                return Err(Error::SchemaError("star family needs d >= 3".into()));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..RETRY_BUDGET {
                let Some(lines) = draw_generic_p2_lines(&mut rng, d, field) else {
                    continue;
                };
                let comps = pair_components(&lines)?;
                return Configuration::new(
                    Ambient::P2,
                    comps,
                    format!("star-points-d{d}-seed{seed}"),
                );
            }
            Err(Error::DegenerateDraw(RETRY_BUDGET))
        }
        Family::PseudostarGeneric(d) => {
            let d = *d;
            if d < 3 {
                return Err(Error::SchemaError("pseudostar family needs d >= 3".into()));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            'attempt: for _ in 0..RETRY_BUDGET {
                let planes: Vec<Vec<Scalar>> = (0..d).map(|_| draw_vec(&mut rng, 4, field)).collect();
                if planes.iter().any(|p| p.iter().all(Scalar::is_zero)) {
                    continue;
                }
                for i in 0..d {
                    for j in i + 1..d {
                        if proportional(&planes[i], &planes[j]) {
                            continue 'attempt;
                        }
                    }
                }
                // three planes sharing a line have dependent forms
                for i in 0..d {
                    for j in i + 1..d {
                        for k in j + 1..d {
                            let m = Matrix::from_rows(
                                field,
                                vec![planes[i].clone(), planes[j].clone(), planes[k].clone()],
                            );
                            if m.rank() < 3 {
                                continue 'attempt;
                            }
                        }
                    }
                }
                let comps = pair_components(&planes)?;
                return Configuration::new(
                    Ambient::P3,
                    comps,
                    format!("pseudostar-d{d}-seed{seed}"),
                );
            }
            Err(Error::DegenerateDraw(RETRY_BUDGET))
        }
        Family::ConeOverStar(d) => {
            let d = *d;
            if d < 3 {
                return Err(Error::SchemaError("cone family needs d >= 3".into()));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..RETRY_BUDGET {
                let Some(lines) = draw_generic_p2_lines(&mut rng, d, field) else {
                    continue;
                };
                let planes: Vec<Vec<Scalar>> = lines
                    .into_iter()
                    .map(|mut l| {
                        l.push(Scalar::zero(field));
                        l
                    })
                    .collect();
                let comps = pair_components(&planes)?;
                return Configuration::new(Ambient::P3, comps, format!("cone-d{d}-seed{seed}"));
            }
            Err(Error::DegenerateDraw(RETRY_BUDGET))
        }
        Family::Coplanar(n) => {
            let n = *n;
            if n < 1 {
                return Err(Error::SchemaError("coplanar family needs n >= 1".into()));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let w_form: Vec<Scalar> = {
                let mut v = vec![Scalar::zero(field); 4];
                v[3] = Scalar::one(field);
                v
            };
            'attempt: for _ in 0..RETRY_BUDGET {
                let traces: Vec<Vec<Scalar>> = (0..n).map(|_| draw_vec(&mut rng, 3, field)).collect();
                if traces.iter().any(|t| t.iter().all(Scalar::is_zero)) {
                    continue;
                }
                for i in 0..n {
                    for j in i + 1..n {
                        if proportional(&traces[i], &traces[j]) {
                            continue 'attempt;
                        }
                    }
                }
                let comps: Result<Vec<LinearComponent>> = traces
                    .into_iter()
                    .map(|mut t| {
                        t.push(Scalar::zero(field));
                        LinearComponent::new(w_form.clone(), t)
                    })
                    .collect();
                return Configuration::new(
                    Ambient::P3,
                    comps?,
                    format!("coplanar-n{n}-seed{seed}"),
                );
            }
            Err(Error::DegenerateDraw(RETRY_BUDGET))
        }
        Family::SkewPair => {
            let comps = vec![
                LinearComponent::from_i64(&[1, 0, 0, 0], &[0, 1, 0, 0], field)?,
                LinearComponent::from_i64(&[0, 0, 1, 0], &[0, 0, 0, 1], field)?,
            ];
            Configuration::new(Ambient::P3, comps, "skew-pair".into())
        }
        Family::Fig2Triple => {
            let comps = vec![
                LinearComponent::from_i64(&[1, 0, 0, 0], &[0, 0, 1, 0], field)?,
                LinearComponent::from_i64(&[0, 1, 0, 0], &[0, 0, 1, 0], field)?,
                LinearComponent::from_i64(&[1, 0, 0, 0], &[0, 0, 0, 1], field)?,
            ];
            Configuration::new(Ambient::P3, comps, "fig2-triple".into())
        }
        Family::CollinearPoints(n) => {
            let n = *n;
            if n < 1 {
                return Err(Error::SchemaError("collinear family needs n >= 1".into()));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let z_form: Vec<Scalar> = {
                let mut v = vec![Scalar::zero(field); 3];
                v[2] = Scalar::one(field);
                v
            };
            'attempt: for _ in 0..RETRY_BUDGET {
                // point (a,b,0) carried by the form b·x − a·y
                let pts: Vec<Vec<Scalar>> = (0..n).map(|_| draw_vec(&mut rng, 2, field)).collect();
                if pts.iter().any(|p| p.iter().all(Scalar::is_zero)) {
                    continue;
                }
                for i in 0..n {
                    for j in i + 1..n {
                        if proportional(&pts[i], &pts[j]) {
                            continue 'attempt;
                        }
                    }
                }
                let comps: Result<Vec<LinearComponent>> = pts
                    .into_iter()
                    .map(|p| {
                        let form = vec![p[1].clone(), p[0].neg(), Scalar::zero(field)];
                        LinearComponent::new(z_form.clone(), form)
                    })
                    .collect();
                return Configuration::new(
                    Ambient::P2,
                    comps?,
                    format!("collinear-n{n}-seed{seed}"),
                );
            }
            Err(Error::DegenerateDraw(RETRY_BUDGET))
        }
        Family::RandomLines(s) => {
            let s = *s;
            if s < 1 {
                return Err(Error::SchemaError("random family needs s >= 1".into()));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            'attempt: for _ in 0..RETRY_BUDGET {
                let mut comps: Vec<LinearComponent> = Vec::with_capacity(s);
                for _ in 0..s {
                    let f1 = draw_vec(&mut rng, 4, field);
                    let f2 = draw_vec(&mut rng, 4, field);
                    match LinearComponent::new(f1, f2) {
                        Ok(c) => comps.push(c),
                        Err(_) => continue 'attempt,
                    }
                }
                for i in 0..s {
                    for j in i + 1..s {
                        if comps[i] == comps[j] {
                            continue 'attempt;
                        }
                    }
                }
                return Configuration::new(Ambient::P3, comps, format!("random-s{s}-seed{seed}"));
            }
            Err(Error::DegenerateDraw(RETRY_BUDGET))
        }
        Family::ExplicitJSON(text) => parse_config(text),
    }
}

fn field_of_value(v: &Value) -> Result<FieldSpec> {
    match v {
        Value::String(s) if s == "Q" => Ok(FieldSpec::Q),
        Value::Object(map) => {
            let p = map
                .get("GFp")
                .and_then(Value::as_u64)
                .ok_or_else(|| Error::SchemaError("field object must be {\"GFp\": prime}".into()))?;
            if map.len() != 1 {
                return Err(Error::SchemaError("field object must be {\"GFp\": prime}".into()));
            }
            FieldSpec::gfp(p)
        }
        _ => Err(Error::SchemaError(
            "field must be \"Q\" or {\"GFp\": prime}".into(),
        )),
    }
}

fn scalar_of_value(v: &Value, field: FieldSpec, at: &str) -> Result<Scalar> {
    if let Some(x) = v.as_i64() {
        return Ok(Scalar::from_i64(x, field));
    }
    if let Some(x) = v.as_u64() {
        return Ok(Scalar::from_integer(rug::Integer::from(x), field));
    }
    Err(Error::SchemaError(format!(
        "{at}: coefficients must be integers"
    )))
}

/// Parses the configuration interchange document. Validation errors name the
/// offending position.
pub fn parse_config(text: &str) -> Result<Configuration> {
    let doc: Value =
        serde_json::from_str(text).map_err(|e| Error::SchemaError(format!("not JSON: {e}")))?;
    let obj = doc
        .as_object()
        .ok_or_else(|| Error::SchemaError("top level must be an object".into()))?;
    for key in obj.keys() {
        if !matches!(key.as_str(), "ambient" | "field" | "label" | "components") {
            return Err(Error::SchemaError(format!("unknown key {key:?}")));
        }
    }
    let ambient = match obj.get("ambient").and_then(Value::as_str) {
        Some("P2") => Ambient::P2,
        Some("P3") => Ambient::P3,
        _ => {
            return Err(Error::SchemaError(
                "ambient must be \"P2\" or \"P3\"".into(),
            ))
        }
    };
    let field = field_of_value(
        obj.get("field")
            .ok_or_else(|| Error::SchemaError("missing key \"field\"".into()))?,
    )?;
    let label = obj
        .get("label")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::SchemaError("label must be a string".into()))?
        .to_string();
    let comps_v = obj
        .get("components")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::SchemaError("components must be an array".into()))?;
    let expected_kind = match ambient {
        Ambient::P2 => "point",
        Ambient::P3 => "line",
    };
    let nvars = ambient.nvars();
    let mut comps = Vec::with_capacity(comps_v.len());
    for (i, cv) in comps_v.iter().enumerate() {
        let at = format!("components[{i}]");
        let cobj = cv
            .as_object()
            .ok_or_else(|| Error::SchemaError(format!("{at} must be an object")))?;
        for key in cobj.keys() {
            if !matches!(key.as_str(), "kind" | "forms") {
                return Err(Error::SchemaError(format!("{at}: unknown key {key:?}")));
            }
        }
        match cobj.get("kind").and_then(Value::as_str) {
            Some(k) if k == expected_kind => {}
            Some(k) => {
                return Err(Error::SchemaError(format!(
                    "{at}.kind: {k:?} does not match ambient {}",
                    ambient.as_str()
                )))
            }
            None => return Err(Error::SchemaError(format!("{at}.kind must be a string"))),
        }
        let forms_v = cobj
            .get("forms")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::SchemaError(format!("{at}.forms must be an array")))?;
        if forms_v.len() != 2 {
            return Err(Error::SchemaError(format!(
                "{at}.forms must hold exactly two forms"
            )));
        }
        let mut pair = Vec::with_capacity(2);
        for (fi, fv) in forms_v.iter().enumerate() {
            let fat = format!("{at}.forms[{fi}]");
            let coeffs_v = fv
                .as_array()
                .ok_or_else(|| Error::SchemaError(format!("{fat} must be an array")))?;
            if coeffs_v.len() != nvars {
                return Err(Error::SchemaError(format!(
                    "{fat}: expected {nvars} coefficients, got {}",
                    coeffs_v.len()
                )));
            }
            let coeffs: Result<Vec<Scalar>> = coeffs_v
                .iter()
                .map(|c| scalar_of_value(c, field, &fat))
                .collect();
            pair.push(coeffs?);
        }
        let f2 = pair.pop().expect("two forms");
        let f1 = pair.pop().expect("two forms");
        comps.push(LinearComponent::new(f1, f2)?);
    }
    Configuration::new(ambient, comps, label)
}

/// Serializes a configuration to the interchange document: compact JSON with
/// the fixed key order ambient, field, label, components. Form coefficients
/// are written as canonical integers (denominators cleared, content stripped,
/// first nonzero positive), so equal configurations serialize identically.
pub fn serialize_config(config: &Configuration) -> String {
    let mut out = String::from("{\"ambient\":\"");
    out.push_str(config.ambient().as_str());
    out.push_str("\",\"field\":");
    match config.field() {
        FieldSpec::Q => out.push_str("\"Q\""),
        FieldSpec::GFp(p) => out.push_str(&format!("{{\"GFp\":{p}}}")),
    }
    out.push_str(",\"label\":");
    out.push_str(&serde_json::to_string(config.label()).expect("string serializes"));
    out.push_str(",\"components\":[");
    let kind = match config.ambient() {
        Ambient::P2 => "point",
        Ambient::P3 => "line",
    };
    for (i, c) in config.components().iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(&format!("{{\"kind\":\"{kind}\",\"forms\":["));
        for (fi, form) in c.forms().iter().enumerate() {
            if fi > 0 {
                out.push(',');
            }
            let ints = integer_normalized(form);
            let strs: Vec<String> = ints.iter().map(|x| x.to_string()).collect();
            out.push_str(&format!("[{}]", strs.join(",")));
        }
        out.push_str("]}");
    }
    out.push_str("]}");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::{detect_collinear, detect_pseudostar, detect_star_points};
    use crate::geometry::coplanar_witness;
    use crate::symbolic::type_of;

    const Q: FieldSpec = FieldSpec::Q;

    fn gen(family: Family, seed: u64) -> Configuration {
        generate(&GenSpec {
            family,
            seed,
            field: Q,
        })
        .unwrap()
    }

    #[test]
    fn fig2_triple_has_the_exact_ideals() {
        let cfg = gen(Family::Fig2Triple, 0);
        let expect = [
            LinearComponent::from_i64(&[1, 0, 0, 0], &[0, 0, 1, 0], Q).unwrap(),
            LinearComponent::from_i64(&[0, 1, 0, 0], &[0, 0, 1, 0], Q).unwrap(),
            LinearComponent::from_i64(&[1, 0, 0, 0], &[0, 0, 0, 1], Q).unwrap(),
        ];
        assert_eq!(cfg.components(), &expect);
    }

    #[test]
    fn skew_pair_is_xy_zw() {
        let cfg = gen(Family::SkewPair, 0);
        let expect = [
            LinearComponent::from_i64(&[1, 0, 0, 0], &[0, 1, 0, 0], Q).unwrap(),
            LinearComponent::from_i64(&[0, 0, 1, 0], &[0, 0, 0, 1], Q).unwrap(),
        ];
        assert_eq!(cfg.components(), &expect);
    }

    #[test]
    fn pseudostar_generator_round_trips_through_the_classifier() {
        let cfg = gen(Family::PseudostarGeneric(4), 7);
        assert_eq!(cfg.components().len(), 6);
        let cert = detect_pseudostar(&cfg).expect("generated pseudostar");
        assert_eq!(cert.d, 4);
    }

    #[test]
    fn star_points_generator_counts_and_detects() {
        let cfg = gen(Family::StarPointsP2(3), 1);
        assert_eq!(cfg.components().len(), 3);
        let cfg5 = gen(Family::StarPointsP2(5), 2);
        assert_eq!(cfg5.components().len(), 10);
        let cert = detect_star_points(&cfg5.points()).expect("generated star");
        assert_eq!(cert.d, 5);
    }

    #[test]
    fn cone_generator_keeps_the_apex_and_detects() {
        let cfg = gen(Family::ConeOverStar(4), 3);
        let apex = crate::geometry::HPoint::from_i64(&[0, 0, 0, 1], Q).unwrap();
        for l in cfg.lines() {
            assert!(l.contains(&apex));
        }
        let cert = detect_pseudostar(&cfg).expect("cone certificate");
        assert_eq!(cert.d, 4);
    }

    #[test]
    fn coplanar_generator_lies_in_one_plane() {
        let cfg = gen(Family::Coplanar(3), 4);
        let w = coplanar_witness(&cfg.lines()).unwrap();
        assert!(w.is_some());
    }

    #[test]
    fn collinear_generator_lies_on_one_line() {
        let cfg = gen(Family::CollinearPoints(4), 5);
        assert_eq!(cfg.components().len(), 4);
        assert!(detect_collinear(&cfg.points()).is_some());
        let t = type_of(&cfg).unwrap();
        assert_eq!((t.alpha1, t.alpha2), (1, 2));
    }

    #[test]
    fn random_lines_are_distinct_and_deterministic() {
        let a = gen(Family::RandomLines(5), 11);
        let b = gen(Family::RandomLines(5), 11);
        assert_eq!(a, b);
        let c = gen(Family::RandomLines(5), 12);
        assert_ne!(a, c);
    }

    #[test]
    fn generation_is_byte_deterministic() {
        for family in [
            Family::StarPointsP2(4),
            Family::PseudostarGeneric(4),
            Family::ConeOverStar(3),
            Family::Coplanar(2),
            Family::CollinearPoints(3),
            Family::RandomLines(3),
        ] {
            let s1 = serialize_config(&gen(family.clone(), 9));
            let s2 = serialize_config(&gen(family, 9));
            assert_eq!(s1, s2);
        }
    }

    #[test]
    fn serialize_parse_round_trip() {
        let cfg = gen(Family::PseudostarGeneric(5), 13);
        let text = serialize_config(&cfg);
        let back = parse_config(&text).unwrap();
        assert_eq!(cfg, back);
        assert_eq!(serialize_config(&back), text);
    }

    #[test]
    fn explicit_json_family_parses() {
        let text = r#"{"ambient":"P3","field":"Q","label":"skew",
            "components":[
              {"kind":"line","forms":[[1,0,0,0],[0,1,0,0]]},
              {"kind":"line","forms":[[0,0,1,0],[0,0,0,1]]}
            ]}"#;
        let cfg = generate(&GenSpec {
            family: Family::ExplicitJSON(text.into()),
            seed: 0,
            field: Q,
        })
        .unwrap();
        assert_eq!(cfg.components().len(), 2);
        assert_eq!(cfg.label(), "skew");
    }

    #[test]
    fn parse_rejects_malformed_documents() {
        let dup = r#"{"ambient":"P3","field":"Q","label":"dup",
            "components":[
              {"kind":"line","forms":[[1,0,0,0],[0,1,0,0]]},
              {"kind":"line","forms":[[2,0,0,0],[0,5,0,0]]}
            ]}"#;
        assert!(matches!(
            parse_config(dup),
            Err(Error::DuplicateComponent(_))
        ));

        let bad_ambient = r#"{"ambient":"P4","field":"Q","label":"","components":[]}"#;
        assert!(matches!(parse_config(bad_ambient), Err(Error::SchemaError(_))));

        let bad_field = r#"{"ambient":"P3","field":{"GFp":91},"label":"","components":[
            {"kind":"line","forms":[[1,0,0,0],[0,1,0,0]]}]}"#;
        assert!(matches!(
            parse_config(bad_field),
            Err(Error::NonPrimeModulus(91))
        ));

        let dependent = r#"{"ambient":"P3","field":"Q","label":"","components":[
            {"kind":"line","forms":[[1,0,0,0],[2,0,0,0]]}]}"#;
        assert!(matches!(parse_config(dependent), Err(Error::DependentForms)));

        let wrong_kind = r#"{"ambient":"P3","field":"Q","label":"","components":[
            {"kind":"point","forms":[[1,0,0,0],[0,1,0,0]]}]}"#;
        let err = parse_config(wrong_kind).unwrap_err();
        assert!(matches!(&err, Error::SchemaError(msg) if msg.contains("components[0]")));

        let float = r#"{"ambient":"P3","field":"Q","label":"","components":[
            {"kind":"line","forms":[[1.5,0,0,0],[0,1,0,0]]}]}"#;
        assert!(matches!(parse_config(float), Err(Error::SchemaError(_))));
    }

    #[test]
    fn gfp_configs_serialize_with_the_modulus() {
        let f7 = FieldSpec::gfp(7).unwrap();
        let cfg = generate(&GenSpec {
            family: Family::SkewPair,
            seed: 0,
            field: f7,
        })
        .unwrap();
        let text = serialize_config(&cfg);
        assert!(text.contains("{\"GFp\":7}"));
        let back = parse_config(&text).unwrap();
        assert_eq!(cfg, back);
    }

    #[test]
    fn small_d_rejected_for_structured_families() {
        for family in [
            Family::StarPointsP2(2),
            Family::PseudostarGeneric(2),
            Family::ConeOverStar(1),
        ] {
            let r = generate(&GenSpec {
                family,
                seed: 0,
                field: Q,
            });
            assert!(matches!(r, Err(Error::SchemaError(_))));
        }
    }
}

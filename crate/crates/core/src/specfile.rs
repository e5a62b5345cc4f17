//! Sectioned text specs for the fan builders.
//!
//! A section starts with a line holding only its keyword (`LINES`,
//! `SEGMENTS`, `BUNDLES`, `RAYS`, `MARKS`); `PARAMS` is a single line of
//! `KEY value` pairs such as `PARAMS B 2 E 2 EPS 1/100 SEED 7`.
//!
//! * fan: `LINES` holds `l` and `l'` as `name x1 y1 x2 y2`, `SEGMENTS` holds
//!   `name x1 y1 x2 y2`.
//! * arrangement: `LINES` of `name x1 y1 x2 y2`.
//! * generalized fan: `SEGMENTS` of `name bottom top` (x on `l` and on `l'`),
//!   `BUNDLES` of lowest bundle heights, `RAYS` of `name height`, `MARKS` of
//!   `label x`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exactnum::Scalar;
use crate::fan::FanSpec;
use crate::formats::content_lines;
use crate::genfan::{GenFanSpec, GenSegment, Mode};
use crate::projgeom::{join, ProjLine, ProjPoint, Segment};

const SECTIONS: [&str; 5] = ["LINES", "SEGMENTS", "BUNDLES", "RAYS", "MARKS"];

struct Sections {
    rows: BTreeMap<&'static str, Vec<(usize, Vec<String>)>>,
    params: BTreeMap<String, (usize, String)>,
}

fn sections(text: &str, allowed: &[&str], params: &[&str]) -> Result<Sections> {
    let mut rows: BTreeMap<&'static str, Vec<(usize, Vec<String>)>> = BTreeMap::new();
    let mut current: Option<&'static str> = None;
    let mut found = BTreeMap::new();
    for (line, content) in content_lines(text) {
        let err = |msg: String| Error::ParseLine { line, msg };
        let f: Vec<String> = content.split_whitespace().map(str::to_string).collect();
        if let Some(&s) = SECTIONS.iter().find(|&&s| s == f[0]) {
            if f.len() != 1 {
                return Err(err(format!("section header {s} takes no arguments")));
            }
            if !allowed.contains(&s) {
                return Err(err(format!("section {s} is not used here")));
            }
            current = Some(s);
            rows.entry(s).or_default();
            continue;
        }
        if f[0] == "PARAMS" {
            if f.len() % 2 != 1 {
                return Err(err("PARAMS takes KEY value pairs".into()));
            }
            for kv in f[1..].chunks(2) {
                let key = kv[0].to_ascii_uppercase();
                if !params.contains(&key.as_str()) {
                    return Err(err(format!("unknown parameter {key}")));
                }
                if found.insert(key.clone(), (line, kv[1].clone())).is_some() {
                    return Err(err(format!("parameter {key} given twice")));
                }
            }
            continue;
        }
        let s = current.ok_or_else(|| err("data before any section header".into()))?;
        rows.entry(s).or_default().push((line, f));
    }
    Ok(Sections { rows, params: found })
}

impl Sections {
    fn rows(&self, s: &str) -> &[(usize, Vec<String>)] {
        self.rows.get(s).map(Vec::as_slice).unwrap_or(&[])
    }

    fn param<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>> {
        self.params
            .get(key)
            .map(|(line, v)| {
                v.parse::<T>().map_err(|_| Error::ParseLine { line: *line, msg: format!("bad value {v:?} for {key}") })
            })
            .transpose()
    }
}

fn arity(line: usize, f: &[String], n: usize) -> Result<()> {
    if f.len() != n {
        return Err(Error::ParseLine { line, msg: format!("expected {n} fields, got {}", f.len()) });
    }
    Ok(())
}

fn scalar(line: usize, s: &str) -> Result<Scalar> {
    s.parse().map_err(|e: Error| Error::ParseLine { line, msg: e.to_string() })
}

fn two_points(line: usize, f: &[String]) -> Result<(ProjPoint, ProjPoint)> {
    arity(line, f, 5)?;
    let v: Vec<Scalar> = f[1..].iter().map(|s| scalar(line, s)).collect::<Result<_>>()?;
    Ok((ProjPoint::affine(v[0].clone(), v[1].clone()), ProjPoint::affine(v[2].clone(), v[3].clone())))
}

fn named_lines(sec: &Sections) -> Result<Vec<(String, ProjLine)>> {
    sec.rows("LINES")
        .iter()
        .map(|(line, f)| {
            let (p, q) = two_points(*line, f)?;
            let l = join(&p, &q).map_err(|e| Error::ParseLine { line: *line, msg: e.to_string() })?;
            Ok((f[0].clone(), l))
        })
        .collect()
}

pub fn parse_fan_spec(text: &str) -> Result<FanSpec> {
    let sec = sections(text, &["LINES", "SEGMENTS"], &["SEED"])?;
    let lines = named_lines(&sec)?;
    if lines.len() != 2 {
        return Err(Error::InvalidSpec(format!("a fan needs exactly two lines, got {}", lines.len())));
    }
    let mut segments = Vec::new();
    let mut names = Vec::new();
    for (line, f) in sec.rows("SEGMENTS") {
        let (p, q) = two_points(*line, f)?;
        let s = Segment::new(p, q).map_err(|e| Error::ParseLine { line: *line, msg: e.to_string() })?;
        segments.push(s);
        names.push(f[0].clone());
    }
    let mut spec = FanSpec::new(lines[0].1.clone(), lines[1].1.clone(), segments);
    spec.names = names;
    spec.seed = sec.param("SEED")?.unwrap_or(0);
    Ok(spec)
}

/// Lines, their names and the seed.
pub fn parse_arrangement_spec(text: &str) -> Result<(Vec<ProjLine>, Vec<String>, u64)> {
    let sec = sections(text, &["LINES"], &["SEED"])?;
    let (names, lines) = named_lines(&sec)?.into_iter().unzip();
    Ok((lines, names, sec.param("SEED")?.unwrap_or(0)))
}

pub fn parse_genfan_spec(text: &str) -> Result<GenFanSpec> {
    let sec = sections(text, &["SEGMENTS", "BUNDLES", "RAYS", "MARKS"], &["B", "E", "EPS", "SEED", "MODE", "H"])?;
    let segments = sec
        .rows("SEGMENTS")
        .iter()
        .map(|(line, f)| {
            arity(*line, f, 3)?;
            Ok(GenSegment { name: f[0].clone(), bottom: scalar(*line, &f[1])?, top: scalar(*line, &f[2])? })
        })
        .collect::<Result<Vec<_>>>()?;
    let need = |k: &str| Error::InvalidSpec(format!("PARAMS {k} is required"));
    let b: usize = sec.param("B")?.ok_or_else(|| need("B"))?;
    let e: usize = sec.param("E")?.ok_or_else(|| need("E"))?;
    let eps: Scalar = sec.param("EPS")?.ok_or_else(|| need("EPS"))?;
    let mut spec = GenFanSpec::new(segments, b, e, eps);
    if let Some(h) = sec.param("H")? {
        spec.height = h;
    }
    spec.seed = sec.param("SEED")?.unwrap_or(0);
    spec.mode = sec.param::<Mode>("MODE")?.unwrap_or(Mode::Scaled);
    for (line, f) in sec.rows("BUNDLES") {
        arity(*line, f, 1)?;
        spec.bundles.push(scalar(*line, &f[0])?);
    }
    for (key, out) in [("RAYS", &mut spec.rays), ("MARKS", &mut spec.marks)] {
        for (line, f) in sec.rows(key) {
            arity(*line, f, 2)?;
            out.push((f[0].clone(), scalar(*line, &f[1])?));
        }
    }
    Ok(spec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fan_spec() {
        let spec = parse_fan_spec(
            "# two crossing segments\nLINES\nl 0 0 1 0\nl' 0 0 0 1\nSEGMENTS\nA 4 0 0 8\nB 8 0 0 4\nPARAMS SEED 5\n",
        )
        .unwrap();
        assert_eq!(spec.segments.len(), 2);
        assert_eq!(spec.names, ["A", "B"]);
        assert_eq!(spec.seed, 5);
        let bad = parse_fan_spec("LINES\nl 0 0 1 0\nl' 0 0 0 1\nSEGMENTS\nA 1 2\n");
        assert!(matches!(bad, Err(Error::ParseLine { line: 5, .. })));
        assert!(parse_fan_spec("LINES\nl 0 0 1 0\n").is_err());
    }

    #[test]
    fn genfan_spec() {
        let spec = parse_genfan_spec(
            "SEGMENTS\na 0 1\nb 1 0\nRAYS\nr 1/2\nBUNDLES\n1/4\nPARAMS B 2 E 1 EPS 1/100 SEED 3\n",
        )
        .unwrap();
        assert_eq!(spec.segments.len(), 2);
        assert_eq!(spec.rays[0].1, Scalar::from_ratio(1, 2));
        assert_eq!(spec.bundles.len(), 1);
        assert_eq!((spec.bundle_size, spec.extension_count, spec.seed), (2, 1, 3));
        assert!(parse_genfan_spec("SEGMENTS\na 0 1\n").is_err());
        assert!(parse_genfan_spec("SEGMENTS\na 0 1\nPARAMS B 2 E 1 EPS 1/100 X 1\n").is_err());
    }
}

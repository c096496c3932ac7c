//! JSON Lines spectrum files.
//!
//! Each line is one class, `{"norm": 4.0, "weight": [1.0, 0.0], "multiplicity": 1, "label": "a"}`
//! with exactly one of `norm` or `length`. A line `{"tail_model": {"n_max": .., "growth": ..}}`
//! declares a bound for classes not listed.

use super::model::{LengthSpectrum, PrimitiveClass, Source, TailModel};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

#[derive(Debug, Deserialize, Serialize, Default)]
#[serde(deny_unknown_fields)]
struct Line {
    #[serde(skip_serializing_if = "Option::is_none")]
    norm: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    length: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    weight: Option<[f64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    multiplicity: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    label: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    tail_model: Option<TailModel>,
}

fn at(line: usize, e: Error) -> Error {
    match e {
        Error::InvariantViolation(r) => Error::InvariantViolation(format!("line {line}: {r}")),
        other => other,
    }
}

pub fn parse_spectrum<R: BufRead>(reader: R) -> Result<LengthSpectrum> {
    let mut classes = Vec::new();
    let mut tail = None;
    for (i, line) in reader.lines().enumerate() {
        let n = i + 1;
        let line = line?;
        let text = line.trim();
        if text.is_empty() {
            continue;
        }
        let rec: Line = serde_json::from_str(text).map_err(|e| Error::Parse {
            line: n,
            reason: e.to_string(),
        })?;
        if let Some(t) = rec.tail_model {
            if rec.norm.is_some() || rec.length.is_some() || rec.weight.is_some() || rec.multiplicity.is_some() {
                return Err(Error::Parse {
                    line: n,
                    reason: "tail_model must be on its own line".into(),
                });
            }
            if tail.is_some() {
                return Err(Error::Parse {
                    line: n,
                    reason: "more than one tail_model line".into(),
                });
            }
            tail = Some(t);
            continue;
        }
        let weight = rec.weight.unwrap_or([1.0, 0.0]);
        let mult = rec.multiplicity.unwrap_or(1);
        let class = match (rec.norm, rec.length) {
            (Some(x), None) => PrimitiveClass::from_norm(x, weight, mult, rec.label),
            (None, Some(l)) => PrimitiveClass::from_length(l, weight, mult, rec.label),
            _ => {
                return Err(Error::Parse {
                    line: n,
                    reason: "exactly one of norm or length is required".into(),
                })
            }
        };
        classes.push(class.map_err(|e| at(n, e))?);
    }
    LengthSpectrum::new(classes, tail)
}

pub fn load_spectrum(path: impl AsRef<Path>) -> Result<LengthSpectrum> {
    let f = std::fs::File::open(path.as_ref()).map_err(|e| Error::Io(format!("{}: {e}", path.as_ref().display())))?;
    parse_spectrum(BufReader::new(f))
}

pub fn write_spectrum<W: Write>(spec: &LengthSpectrum, mut out: W) -> Result<()> {
    for c in spec.classes() {
        let mut line = Line {
            weight: Some(c.weight_pair()),
            label: c.label().map(str::to_owned),
            ..Line::default()
        };
        match c.source() {
            Source::Norm => line.norm = Some(c.norm()),
            Source::Length => line.length = Some(c.length()),
        }
        if c.multiplicity() != 1 {
            line.multiplicity = Some(c.multiplicity());
        }
        let text = serde_json::to_string(&line).map_err(|e| Error::Io(e.to_string()))?;
        writeln!(out, "{text}")?;
    }
    if let Some(t) = spec.tail_model() {
        let line = Line {
            tail_model: Some(t),
            ..Line::default()
        };
        let text = serde_json::to_string(&line).map_err(|e| Error::Io(e.to_string()))?;
        writeln!(out, "{text}")?;
    }
    Ok(())
}

pub fn save_spectrum(spec: &LengthSpectrum, path: impl AsRef<Path>) -> Result<()> {
    let f = std::fs::File::create(path.as_ref()).map_err(|e| Error::Io(format!("{}: {e}", path.as_ref().display())))?;
    let mut w = std::io::BufWriter::new(f);
    write_spectrum(spec, &mut w)?;
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> Result<LengthSpectrum> {
        parse_spectrum(s.as_bytes())
    }

    #[test]
    fn basic_lines() {
        let s = parse("{\"norm\": 4.0, \"weight\": [1.0, 0.0]}\n\n{\"length\": 2.0, \"label\": \"x\"}\n").unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s.classes()[0].norm(), 4.0);
        assert_eq!(s.classes()[1].norm(), 2f64.exp());
        assert_eq!(s.classes()[1].multiplicity(), 1);
    }

    #[test]
    fn errors_carry_line_numbers() {
        assert!(
            matches!(parse("{\"norm\": 3}\n{\"norm\": 0.5}"), Err(Error::InvariantViolation(m)) if m.contains("line 2"))
        );
        assert!(matches!(
            parse("{\"norm\": 3, \"length\": 1.0986}"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse("{\"norm\": 3}\nnot json"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(parse("{\"nrm\": 3}"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn round_trip_is_exact() {
        let text = "{\"norm\":6.854101966249685,\"weight\":[0.1,-0.30000000000000004],\"label\":\"D=5\"}\n\
                    {\"length\":3.3,\"weight\":[1.0,0.0],\"multiplicity\":2}\n\
                    {\"tail_model\":{\"n_max\":50.0,\"growth\":1.5}}\n";
        let s = parse(text).unwrap();
        let mut out = Vec::new();
        write_spectrum(&s, &mut out).unwrap();
        let again = parse_spectrum(out.as_slice()).unwrap();
        assert_eq!(s, again);
        assert_eq!(String::from_utf8(out).unwrap(), text);
    }
}

//! `key = value` setup records.
//!
//! A stanza is a run of non-blank lines; `#` starts a comment. Keys:
//!
//! - `type`: `A3`, `E6`, `A1xA1`, or a bare family letter with `rank`.
//!   A leading order (`2A3`, `3D4`) selects the standard twist.
//! - `rank`: required when `type` has no rank.
//! - `sigma`: `split`, an order (`2`, `3`), or a 1-based node list.
//! - `c`: `s1s3s2` or a 1-based node list; defaults to the canonical word.
//! - `mu`: coweight coordinates; defaults to zero.
//! - `q`: optional integer.

use std::fmt;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use coxlab::rootsys::{standard_twist, CartanType, DiagramAut, RootDatum};
use coxlab::twisted::{canonical_coxeter, TwistedSetup};
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetupRecord {
    pub source: String,
    pub line: usize,
    pub type_label: String,
    pub rank: usize,
    pub sigma: Vec<usize>,
    pub c_word: Option<Vec<usize>>,
    pub mu: Vec<i64>,
    pub q: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum RecordError {
    #[error("{file}:{line}: field `{field}`: {message}")]
    Field { file: String, line: usize, field: String, message: String },
    #[error("{path}: {message}")]
    Io { path: String, message: String },
}

impl fmt::Display for SetupRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.source, self.line)
    }
}

#[derive(Default)]
struct Raw {
    line: usize,
    fields: Vec<(String, String, usize)>,
}

fn list(value: &str) -> Vec<&str> {
    value.split(|c: char| c == ',' || c.is_whitespace()).filter(|s| !s.is_empty()).collect()
}

fn nodes_1based(value: &str, rank: usize) -> Result<Vec<usize>, String> {
    let mut out = Vec::new();
    for tok in list(value) {
        let i: usize = tok.parse().map_err(|_| format!("{tok:?} is not a node number"))?;
        if i == 0 || i > rank {
            return Err(format!("node {i} is outside 1..={rank}"));
        }
        out.push(i - 1);
    }
    Ok(out)
}

fn parse_word(value: &str, rank: usize) -> Result<Vec<usize>, String> {
    let v = value.trim();
    if v.starts_with('s') {
        let parts: Vec<&str> = v.split('s').skip(1).collect();
        if parts.iter().any(|p| p.is_empty()) {
            return Err(format!("{v:?} is not of the form s1s2..."));
        }
        nodes_1based(&parts.join(" "), rank)
    } else {
        nodes_1based(v, rank)
    }
}

impl Raw {
    fn get(&self, key: &str) -> Option<(&str, usize)> {
        self.fields.iter().find(|(k, _, _)| k == key).map(|(_, v, l)| (v.as_str(), *l))
    }

    fn into_record(self, source: &str) -> Result<SetupRecord, RecordError> {
        let err = |field: &str, line: usize, message: String| RecordError::Field {
            file: source.to_string(),
            line,
            field: field.to_string(),
            message,
        };
        for (k, _, l) in &self.fields {
            if !["type", "rank", "sigma", "c", "mu", "q"].contains(&k.as_str()) {
                return Err(err(k, *l, "unknown key".into()));
            }
            if self.fields.iter().filter(|(k2, _, _)| k2 == k).count() > 1 {
                return Err(err(k, *l, "given more than once".into()));
            }
        }
        let (ty, ty_line) = self.get("type").ok_or_else(|| err("type", self.line, "missing".into()))?;
        let ty = ty.trim();
        let digits = ty.chars().take_while(|c| c.is_ascii_digit()).count();
        let (twist, body) = ty.split_at(digits);
        let twist: Option<u64> = if twist.is_empty() { None } else { twist.parse().ok() };
        let label = match self.get("rank") {
            Some((r, l)) => {
                let r: usize = r.trim().parse().map_err(|_| err("rank", l, format!("{r:?} is not a number")))?;
                if body.len() == 1 {
                    format!("{body}{r}")
                } else {
                    let parsed: CartanType = body.parse().map_err(|e: coxlab::Error| err("type", ty_line, e.to_string()))?;
                    if parsed.rank() != r {
                        return Err(err("rank", l, format!("type {body} has rank {}", parsed.rank())));
                    }
                    body.to_string()
                }
            }
            None => body.to_string(),
        };
        let cartan: CartanType = label.parse().map_err(|e: coxlab::Error| err("type", ty_line, e.to_string()))?;
        let rank = cartan.rank();
        let standard = |order: u64, line: usize| -> Result<Vec<usize>, RecordError> {
            if order == 1 {
                return Ok((0..rank).collect());
            }
            let comps = &cartan.components;
            if comps.len() != 1 {
                return Err(err("sigma", line, "a twist order needs a connected type; give the node list".into()));
            }
            standard_twist(comps[0].family, rank, order)
                .filter(|p| p.iter().enumerate().any(|(i, &j)| i != j))
                .ok_or_else(|| err("sigma", line, format!("{label} has no standard twist of order {order}")))
        };
        let sigma = match (self.get("sigma"), twist) {
            (Some(_), Some(_)) => return Err(err("sigma", ty_line, "twist given both in `type` and `sigma`".into())),
            (None, Some(o)) => standard(o, ty_line)?,
            (None, None) => (0..rank).collect(),
            (Some((v, l)), None) => {
                let v = v.trim();
                if v == "split" {
                    (0..rank).collect()
                } else if list(v).len() == 1 && rank > 1 {
                    let o: u64 = v.parse().map_err(|_| err("sigma", l, format!("{v:?} is not an order")))?;
                    standard(o, l)?
                } else {
                    let p = nodes_1based(v, rank).map_err(|m| err("sigma", l, m))?;
                    if p.len() != rank {
                        return Err(err("sigma", l, format!("expected {rank} nodes, got {}", p.len())));
                    }
                    p
                }
            }
        };
        let c_word = match self.get("c") {
            Some((v, l)) => Some(parse_word(v, rank).map_err(|m| err("c", l, m))?),
            None => None,
        };
        let mu = match self.get("mu") {
            Some((v, l)) => {
                let mu = list(v)
                    .into_iter()
                    .map(|t| t.parse::<i64>().map_err(|_| err("mu", l, format!("{t:?} is not an integer"))))
                    .collect::<Result<Vec<_>, _>>()?;
                if mu.len() != rank {
                    return Err(err("mu", l, format!("expected {rank} coordinates, got {}", mu.len())));
                }
                mu
            }
            None => vec![0; rank],
        };
        let q = match self.get("q") {
            Some((v, l)) => Some(v.trim().parse().map_err(|_| err("q", l, format!("{v:?} is not an integer")))?),
            None => None,
        };
        Ok(SetupRecord { source: source.to_string(), line: self.line, type_label: label, rank, sigma, c_word, mu, q })
    }
}

/// All stanzas of `text`.
pub fn parse_records(text: &str, source: &str) -> Result<Vec<SetupRecord>, RecordError> {
    let mut raws: Vec<Raw> = Vec::new();
    let mut cur: Option<Raw> = None;
    for (n, line) in text.lines().enumerate() {
        let n = n + 1;
        let content = line.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            if line.trim().is_empty() {
                raws.extend(cur.take());
            }
            continue;
        }
        let raw = cur.get_or_insert_with(|| Raw { line: n, fields: vec![] });
        for part in content.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, v) = part.split_once('=').ok_or_else(|| RecordError::Field {
                file: source.to_string(),
                line: n,
                field: part.to_string(),
                message: "expected key = value".into(),
            })?;
            raw.fields.push((k.trim().to_string(), v.trim().to_string(), n));
        }
    }
    raws.extend(cur);
    raws.into_iter().map(|r| r.into_record(source)).collect()
}

/// Records from a file, or from every file of a directory in name order.
pub fn load_records(path: &Path) -> Result<Vec<SetupRecord>, RecordError> {
    let io = |p: &Path, e: std::io::Error| RecordError::Io { path: p.display().to_string(), message: e.to_string() };
    let files: Vec<PathBuf> = if path.is_dir() {
        let mut v: Vec<PathBuf> = std::fs::read_dir(path)
            .map_err(|e| io(path, e))?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.is_file())
            .collect();
        v.sort();
        v
    } else {
        vec![path.to_path_buf()]
    };
    let mut out = Vec::new();
    for f in files {
        let text = std::fs::read_to_string(&f).map_err(|e| io(&f, e))?;
        out.extend(parse_records(&text, &f.display().to_string())?);
    }
    Ok(out)
}

impl SetupRecord {
    pub fn datum_and_sigma(&self) -> Result<(Arc<RootDatum>, DiagramAut), coxlab::Error> {
        let cartan: CartanType = self.type_label.parse()?;
        let datum = Arc::new(RootDatum::new(cartan));
        let sigma = DiagramAut::from_nodes(&datum, self.sigma.clone())?;
        Ok((datum, sigma))
    }

    pub fn setup(&self) -> Result<TwistedSetup, coxlab::Error> {
        let (datum, sigma) = self.datum_and_sigma()?;
        let word = self.c_word.clone().unwrap_or_else(|| canonical_coxeter(&sigma));
        TwistedSetup::new(datum, sigma, word, self.mu.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_stanzas() {
        let text = "# two setups\ntype = A\nrank = 3\nc = s1s2s3\nmu = 0 1 0\n\ntype = 2A3; mu = 0,0,0; q = 5\n";
        let recs = parse_records(text, "t").unwrap();
        assert_eq!(recs.len(), 2);
        assert_eq!(recs[0].type_label, "A3");
        assert_eq!(recs[0].c_word, Some(vec![0, 1, 2]));
        assert_eq!(recs[0].mu, vec![0, 1, 0]);
        assert_eq!(recs[1].sigma, vec![2, 1, 0]);
        assert_eq!(recs[1].q, Some(5));
        assert_eq!(recs[1].line, 7);
        assert!(recs[0].setup().is_ok());
    }

    #[test]
    fn diagnostics_name_line_and_field() {
        let e = parse_records("type = A3\nmu = 1 2\n", "f").unwrap_err();
        assert!(e.to_string().starts_with("f:2: field `mu`"), "{e}");
        let e = parse_records("type = B3\nsigma = 2\n", "f").unwrap_err();
        assert!(e.to_string().contains("no standard twist"), "{e}");
        let e = parse_records("type = A3\nc = s1s4\n", "f").unwrap_err();
        assert!(e.to_string().contains("field `c`"), "{e}");
        let e = parse_records("type = A3\ncolour = red\n", "f").unwrap_err();
        assert!(e.to_string().contains("unknown key"), "{e}");
        let e = parse_records("type = A3\nrank = 4\n", "f").unwrap_err();
        assert!(e.to_string().contains("field `rank`"), "{e}");
    }

    #[test]
    fn explicit_sigma() {
        let r = &parse_records("type = D4\nsigma = 3 2 4 1\n", "f").unwrap()[0];
        assert_eq!(r.sigma, vec![2, 1, 3, 0]);
        assert!(r.setup().is_ok());
    }
}

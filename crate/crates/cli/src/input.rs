//! The line-oriented complex format.
//!
//! ```text
//! # the triangle, with an arc dissected over one edge
//! 0 1 2
//! [ambient]
//! 10 11
//! 11 12
//! [family arc k]
//! 0 1 : 10 11; 11 12
//! 0   : 10
//! 1   : 12
//! ```
//!
//! Lines before the first section list the maximal simplices of `K`. An
//! `[ambient]` section lists the maximal simplices of `X`; each
//! `[family NAME k|kop]` section assigns to some simplices of `K` the
//! subcomplex of `X` generated by the listed simplices. Unlisted simplices of
//! `K` get the empty subcomplex.

use std::collections::BTreeSet;
use std::path::Path;

use kduality::{Dissection, SimplicialComplex, Variant};

#[derive(Debug, thiserror::Error)]
pub enum InputError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

fn err(line: usize, message: impl Into<String>) -> InputError {
    InputError::Parse {
        line,
        message: message.into(),
    }
}

#[derive(Debug)]
pub struct ComplexFile {
    pub complex: SimplicialComplex,
    pub dissections: Vec<(String, Dissection)>,
}

struct FamilySection {
    name: String,
    variant: Variant,
    line: usize,
    rows: Vec<(usize, Vec<i64>, Vec<Vec<i64>>)>,
}

enum Section {
    Complex,
    Ambient,
    Family(usize),
}

fn vertices(text: &str, line: usize) -> Result<Vec<i64>, InputError> {
    let vs: Vec<i64> = text
        .split_whitespace()
        .map(|w| match w.parse::<i64>() {
            Ok(v) if v >= 0 => Ok(v),
            _ => Err(err(line, format!("expected a nonnegative integer vertex, found `{w}`"))),
        })
        .collect::<Result<_, _>>()?;
    if vs.is_empty() {
        return Err(err(line, "empty simplex"));
    }
    let distinct: BTreeSet<i64> = vs.iter().copied().collect();
    if distinct.len() != vs.len() {
        return Err(err(line, "repeated vertex"));
    }
    Ok(vs)
}

impl ComplexFile {
    pub fn read(path: &Path) -> Result<ComplexFile, InputError> {
        let text = std::fs::read_to_string(path).map_err(|source| InputError::Io {
            path: path.display().to_string(),
            source,
        })?;
        ComplexFile::parse(&text)
    }

    pub fn parse(text: &str) -> Result<ComplexFile, InputError> {
        let mut section = Section::Complex;
        let mut maximal = Vec::new();
        let mut ambient: Option<(usize, Vec<Vec<i64>>)> = None;
        let mut families: Vec<FamilySection> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let n = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(head) = line.strip_prefix('[') {
                let head = head
                    .strip_suffix(']')
                    .ok_or_else(|| err(n, "unterminated section header"))?;
                let words: Vec<&str> = head.split_whitespace().collect();
                section = match words.as_slice() {
                    ["ambient"] if ambient.is_none() => {
                        ambient = Some((n, Vec::new()));
                        Section::Ambient
                    }
                    ["ambient"] => return Err(err(n, "second [ambient] section")),
                    ["family", name, v] => {
                        let variant = match *v {
                            "k" => Variant::K,
                            "kop" => Variant::KOp,
                            other => return Err(err(n, format!("variant must be k or kop, found `{other}`"))),
                        };
                        if families.iter().any(|f| f.name == *name) {
                            return Err(err(n, format!("family `{name}` defined twice")));
                        }
                        families.push(FamilySection {
                            name: name.to_string(),
                            variant,
                            line: n,
                            rows: Vec::new(),
                        });
                        Section::Family(families.len() - 1)
                    }
                    _ => return Err(err(n, format!("unknown section `[{head}]`"))),
                };
                continue;
            }
            match section {
                Section::Complex => maximal.push(vertices(line, n)?),
                Section::Ambient => ambient.as_mut().expect("in section").1.push(vertices(line, n)?),
                Section::Family(f) => {
                    let (sigma, rest) = line
                        .split_once(':')
                        .ok_or_else(|| err(n, "expected `simplex : simplices`"))?;
                    let members = rest
                        .split(';')
                        .filter(|s| !s.trim().is_empty())
                        .map(|s| vertices(s, n))
                        .collect::<Result<Vec<_>, _>>()?;
                    families[f].rows.push((n, vertices(sigma, n)?, members));
                }
            }
        }
        if maximal.is_empty() {
            return Err(err(1, "no simplices"));
        }
        let complex = SimplicialComplex::build(&maximal).map_err(|e| err(1, e.to_string()))?;
        let ambient = match (ambient, families.is_empty()) {
            (Some((n, ref a)), _) if a.is_empty() => return Err(err(n, "empty [ambient] section")),
            (Some((n, a)), _) => Some(SimplicialComplex::build(&a).map_err(|e| err(n, e.to_string()))?),
            (None, false) => return Err(err(families[0].line, "a family needs an [ambient] section")),
            (None, true) => None,
        };
        let mut dissections = Vec::new();
        for f in families {
            let x = ambient.as_ref().expect("checked above");
            let mut family = vec![BTreeSet::new(); complex.len()];
            for (n, sigma, members) in f.rows {
                let s = complex
                    .find(&sigma)
                    .ok_or_else(|| err(n, "not a simplex of the complex"))?;
                let ids = members
                    .iter()
                    .map(|m| x.find(m).ok_or_else(|| err(n, "not a simplex of the ambient complex")))
                    .collect::<Result<Vec<_>, _>>()?;
                family[s] = x.closure(ids);
            }
            let d = Dissection::new(x.clone(), complex.clone(), family, f.variant)
                .map_err(|e| err(f.line, e.to_string()))?;
            dissections.push((f.name, d));
        }
        Ok(ComplexFile { complex, dissections })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_with_an_arc() {
        let f = ComplexFile::parse(
            "# K\n0 1 2\n[ambient]\n10 11\n11 12\n[family arc k]\n0 1 : 10 11; 11 12\n0 : 10\n1 : 12\n",
        )
        .unwrap();
        assert_eq!(f.complex.f_vector(), vec![3, 3, 1]);
        assert_eq!(f.dissections.len(), 1);
        assert_eq!(f.dissections[0].1.family.iter().map(BTreeSet::len).sum::<usize>(), 7);
    }

    #[test]
    fn line_numbers_in_errors() {
        let e = ComplexFile::parse("0 1\n\n1 x\n").unwrap_err();
        assert_eq!(
            e.to_string(),
            "line 3: expected a nonnegative integer vertex, found `x`"
        );
        let e = ComplexFile::parse("0 -1\n").unwrap_err();
        assert!(e.to_string().starts_with("line 1:"));
        let e = ComplexFile::parse("0 1\n[family f k]\n0 : 1\n").unwrap_err();
        assert_eq!(e.to_string(), "line 2: a family needs an [ambient] section");
        assert!(ComplexFile::parse("# nothing\n").is_err());
        assert!(ComplexFile::parse("0 0\n").is_err());
    }
}

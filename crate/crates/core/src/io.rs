//! Text formats: concept-class files, command-line samples, and rank
//! permutation files.
//!
//! A class file is either JSON,
//!
//! ```text
//! { "domain": ["a", "b", "c"], "hypotheses": ["000", "100", "110"] }
//! ```
//!
//! or plain text with one `'0'/'1'` string per line and implicit point names
//! `p0..p(N-1)`. Blank lines and lines starting with `#` are ignored. A file
//! whose first non-whitespace character is `{` is read as JSON.

use serde::{Deserialize, Serialize};

use crate::concept::{ConceptClass, Domain, Hypothesis, LabeledSample};
use crate::erm::OrdinalClassConfig;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassFile {
    pub domain: Vec<String>,
    pub hypotheses: Vec<String>,
}

impl ClassFile {
    pub fn parse(text: &str) -> Result<Self> {
        let file = if text.trim_start().starts_with('{') {
            let file: ClassFile = serde_json::from_str(text).map_err(|e| Error::Parse {
                line: e.line(),
                column: e.column(),
                message: e.to_string(),
            })?;
            for h in &file.hypotheses {
                if let Err(e) = h.parse::<Hypothesis>() {
                    let (line, column) = locate(text, &format!("\"{h}\""));
                    return Err(Error::Parse {
                        line,
                        column,
                        message: match e {
                            Error::Invalid(m) => m,
                            other => other.to_string(),
                        },
                    });
                }
            }
            file
        } else {
            parse_plain(text)?
        };
        file.validate()?;
        Ok(file)
    }

    pub fn from_class(class: &ConceptClass) -> Self {
        ClassFile {
            domain: class.domain().names().to_vec(),
            hypotheses: class.hypotheses().iter().map(|h| h.to_string()).collect(),
        }
    }

    fn validate(&self) -> Result<()> {
        let n = self.domain.len();
        Domain::new(self.domain.clone())?;
        if self.hypotheses.is_empty() {
            return Err(Error::EmptyClass);
        }
        for h in &self.hypotheses {
            let parsed: Hypothesis = h.parse()?;
            if parsed.len() != n {
                return Err(Error::LengthMismatch {
                    expected: n,
                    found: parsed.len(),
                });
            }
        }
        Ok(())
    }

    /// The hypotheses in file order.
    pub fn listed_hypotheses(&self) -> Result<Vec<Hypothesis>> {
        self.hypotheses.iter().map(|h| h.parse()).collect()
    }

    pub fn to_class(&self) -> Result<ConceptClass> {
        ConceptClass::new(Domain::new(self.domain.clone())?, self.listed_hypotheses()?)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain strings serialize");
        s.push('\n');
        s
    }
}

/// 1-based line and column of the first occurrence of `needle`.
fn locate(text: &str, needle: &str) -> (usize, usize) {
    let at = text.find(needle).unwrap_or(0);
    let before = &text[..at];
    let line = before.matches('\n').count() + 1;
    let column = before.rfind('\n').map_or(at, |nl| at - nl - 1) + 1;
    (line, column)
}

fn parse_plain(text: &str) -> Result<ClassFile> {
    let mut hypotheses: Vec<String> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim_end();
        let body = line.trim_start();
        if body.is_empty() || body.starts_with('#') {
            continue;
        }
        let indent = line.len() - body.len();
        if let Some((col, c)) = body.char_indices().find(|&(_, c)| c != '0' && c != '1') {
            return Err(Error::Parse {
                line: i + 1,
                column: indent + col + 1,
                message: format!("unexpected character {c:?}, expected '0' or '1'"),
            });
        }
        if let Some(first) = hypotheses.first() {
            if first.len() != body.len() {
                return Err(Error::Parse {
                    line: i + 1,
                    column: indent + 1,
                    message: format!("row has {} labels, previous rows have {}", body.len(), first.len()),
                });
            }
        }
        hypotheses.push(body.to_string());
    }
    let n = hypotheses.first().map(String::len).ok_or(Error::EmptyClass)?;
    Ok(ClassFile {
        domain: (0..n).map(|i| format!("p{i}")).collect(),
        hypotheses,
    })
}

/// Parse `"p0=1,p1=1,p2=0"` against `domain`. Order is preserved; an empty
/// string is the empty sample.
pub fn parse_sample(spec: &str, domain: &Domain) -> Result<LabeledSample> {
    let mut pairs = Vec::new();
    let mut offset = 0;
    for token in spec.split(',') {
        let column = offset + 1;
        offset += token.len() + 1;
        let token = token.trim();
        if token.is_empty() {
            if spec.trim().is_empty() {
                break;
            }
            return Err(Error::Parse {
                line: 1,
                column,
                message: "empty sample entry".into(),
            });
        }
        let (name, bit) = token.split_once('=').ok_or_else(|| Error::Parse {
            line: 1,
            column,
            message: format!("expected name=bit, found {token:?}"),
        })?;
        let label = match bit.trim() {
            "0" => false,
            "1" => true,
            other => {
                return Err(Error::Parse {
                    line: 1,
                    column,
                    message: format!("label must be 0 or 1, found {other:?}"),
                })
            }
        };
        pairs.push((domain.index_of(name.trim())?, label));
    }
    Ok(LabeledSample::new(pairs))
}

/// Whitespace-separated ranks `1..=N`, one per point in order.
pub fn parse_permutation(text: &str) -> Result<OrdinalClassConfig> {
    let mut ranks = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let body = line.split('#').next().unwrap_or("");
        let mut search = 0;
        for word in body.split_whitespace() {
            let at = body[search..].find(word).map(|p| p + search).unwrap_or(0);
            search = at + word.len();
            let rank = word.parse::<usize>().map_err(|_| Error::Parse {
                line: i + 1,
                column: at + 1,
                message: format!("expected a rank, found {word:?}"),
            })?;
            ranks.push(rank);
        }
    }
    OrdinalClassConfig::new(ranks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_and_plain_agree() {
        let json = r#"{"domain": ["p0", "p1", "p2"], "hypotheses": ["000", "100", "110", "111"]}"#;
        let plain = "# chain\n000\n100\n\n110\n111\n";
        let a = ClassFile::parse(json).unwrap();
        let b = ClassFile::parse(plain).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_class().unwrap().len(), 4);
    }

    #[test]
    fn plain_errors_carry_position() {
        assert_eq!(
            ClassFile::parse("000\n  01x\n"),
            Err(Error::Parse {
                line: 2,
                column: 5,
                message: "unexpected character 'x', expected '0' or '1'".into()
            })
        );
        assert!(matches!(ClassFile::parse("000\n01\n"), Err(Error::Parse { line: 2, .. })));
        assert_eq!(ClassFile::parse("# nothing\n"), Err(Error::EmptyClass));
    }

    #[test]
    fn json_hypothesis_errors_carry_position() {
        let err = ClassFile::parse("{ \"domain\": [\"a\", \"b\"],\n  \"hypotheses\": [\"01\", \"1x\"] }").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, column: 24, .. }), "{err:?}");
    }

    #[test]
    fn json_errors() {
        assert!(matches!(
            ClassFile::parse("{\"domain\": [\"a\"],\n \"hypotheses\": [\"1\",]}"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert_eq!(
            ClassFile::parse(r#"{"domain": ["a", "a"], "hypotheses": ["00"]}"#),
            Err(Error::DuplicatePoint("a".into()))
        );
        assert_eq!(
            ClassFile::parse(r#"{"domain": ["a", "b"], "hypotheses": ["000"]}"#),
            Err(Error::LengthMismatch { expected: 2, found: 3 })
        );
    }

    #[test]
    fn samples() {
        let d = Domain::numbered(3).unwrap();
        let s = parse_sample("p0=1, p1=1,p2=0", &d).unwrap();
        assert_eq!(s.pairs(), &[(0, true), (1, true), (2, false)]);
        assert!(parse_sample("", &d).unwrap().is_empty());
        assert_eq!(parse_sample("p0=1,p9=0", &d), Err(Error::UnknownPoint("p9".into())));
        assert!(matches!(parse_sample("p0=2", &d), Err(Error::Parse { column: 1, .. })));
        assert!(matches!(parse_sample("p0=1,,p1=0", &d), Err(Error::Parse { column: 6, .. })));
        assert!(matches!(parse_sample("p0=1,p1", &d), Err(Error::Parse { column: 6, .. })));
    }

    #[test]
    fn permutations() {
        let cfg = parse_permutation("3 1\n2 # tail\n").unwrap();
        assert_eq!(cfg.ranks(), &[3, 1, 2]);
        assert!(matches!(parse_permutation("1 x"), Err(Error::Parse { line: 1, column: 3, .. })));
        assert!(matches!(parse_permutation("1 1"), Err(Error::InvalidPermutation(_))));
    }
}

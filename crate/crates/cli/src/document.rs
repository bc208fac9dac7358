//! The certificate document: a line-delimited, version-tagged text format
//! that is self-contained — `verify` re-derives validity from the document
//! alone.
//!
//! Layout, one field per line, values separated by single spaces:
//!
//! ```text
//! cyceq certificate
//! schema_version 1
//! u 1 2 3
//! v 1 3 2
//! u_expanded 1 2 1 3
//! v_expanded 1 3 1 2
//! distinguished 0 1 3
//! offset 2
//! expanded_length 4
//! segments 4
//! segment 0
//! segment 1
//! segment 2 1
//! segment 3
//! n 3
//! m 1
//! p 4
//! cycle 0 2 1
//! lift a 2 a#2
//! end
//! ```
//!
//! Word lines carry letter tokens (possibly none: an empty word is a bare
//! key); the remaining lines carry decimal integers. The construction block
//! (`n`, `m`, `p`, `cycle`, `lift`) is optional metadata that verification
//! ignores. The trailing `end` line guards against truncated files.

use std::fmt;

use cyceq_core::{
    Alphabet, Construction, CyclicOffset, DistinguishedPositions, EqualizationCertificate,
    Equalization, SimultaneousInsertion, Word,
};

pub const MAGIC: &str = "cyceq certificate";
pub const SCHEMA_VERSION: &str = "1";

/// One lifted letter: which occurrence of which original it replaced, and
/// the token it is displayed as.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LiftEntry {
    pub original: String,
    pub ordinal: usize,
    pub fresh: String,
}

/// Optional construction metadata: the normalized permutation's cycles and
/// the lift table.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ConstructionMeta {
    pub n: usize,
    pub m: usize,
    pub p: usize,
    pub cycles: Vec<Vec<usize>>,
    pub lift: Vec<LiftEntry>,
}

/// The document form of an [`EqualizationCertificate`]: words as token
/// arrays, everything else in decimal.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CertificateDocument {
    pub schema_version: String,
    pub u: Vec<String>,
    pub v: Vec<String>,
    pub u_expanded: Vec<String>,
    pub v_expanded: Vec<String>,
    pub distinguished: Vec<usize>,
    pub insertion_segments: Vec<Vec<String>>,
    pub offset: usize,
    pub expanded_length: usize,
    pub construction: Option<ConstructionMeta>,
}

impl CertificateDocument {
    /// Renders a certificate (and optionally its construction) into document
    /// form, using `alphabet` for the letter tokens.
    pub fn from_certificate(
        alphabet: &Alphabet,
        certificate: &EqualizationCertificate,
        construction: Option<&Construction>,
    ) -> Self {
        let tokens = |word: &Word| -> Vec<String> {
            word.letters()
                .iter()
                .map(|&letter| {
                    alphabet
                        .token(letter)
                        .expect("certificate letters are interned")
                        .to_string()
                })
                .collect()
        };
        let construction = construction.map(|construction| ConstructionMeta {
            n: construction.n(),
            m: construction.cycle_count(),
            p: construction.geometry.step(),
            cycles: construction
                .permutation
                .cycles()
                .iter()
                .map(|cycle| cycle.elements().to_vec())
                .collect(),
            lift: construction
                .lift
                .entries()
                .map(|(original, ordinal, _)| {
                    let original = alphabet
                        .token(original)
                        .expect("lifted letters come from the input")
                        .to_string();
                    let fresh = format!("{original}#{ordinal}");
                    LiftEntry {
                        original,
                        ordinal,
                        fresh,
                    }
                })
                .collect(),
        });
        CertificateDocument {
            schema_version: SCHEMA_VERSION.to_string(),
            u: tokens(&certificate.u),
            v: tokens(&certificate.v),
            u_expanded: tokens(&certificate.u_expanded),
            v_expanded: tokens(&certificate.v_expanded),
            distinguished: certificate.distinguished.positions().to_vec(),
            insertion_segments: certificate.insertion.segments().iter().map(tokens).collect(),
            offset: certificate.offset.value(),
            expanded_length: certificate.u_expanded.len(),
            construction,
        }
    }

    /// Shorthand for documenting a full equalization.
    pub fn from_equalization(alphabet: &Alphabet, equalization: &Equalization) -> Self {
        CertificateDocument::from_certificate(
            alphabet,
            &equalization.certificate,
            Some(&equalization.construction),
        )
    }

    /// The canonical text of the document; parsing it back is the identity.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let mut line = |key: &str, values: &[String]| {
            out.push_str(key);
            for value in values {
                out.push(' ');
                out.push_str(value);
            }
            out.push('\n');
        };
        let numbers = |values: &[usize]| -> Vec<String> {
            values.iter().map(usize::to_string).collect()
        };

        line(MAGIC, &[]);
        line("schema_version", std::slice::from_ref(&self.schema_version));
        line("u", &self.u);
        line("v", &self.v);
        line("u_expanded", &self.u_expanded);
        line("v_expanded", &self.v_expanded);
        line("distinguished", &numbers(&self.distinguished));
        line("offset", &[self.offset.to_string()]);
        line("expanded_length", &[self.expanded_length.to_string()]);
        line("segments", &[self.insertion_segments.len().to_string()]);
        for (index, segment) in self.insertion_segments.iter().enumerate() {
            let mut values = vec![index.to_string()];
            values.extend(segment.iter().cloned());
            line("segment", &values);
        }
        if let Some(construction) = &self.construction {
            line("n", &[construction.n.to_string()]);
            line("m", &[construction.m.to_string()]);
            line("p", &[construction.p.to_string()]);
            for cycle in &construction.cycles {
                line("cycle", &numbers(cycle));
            }
            for entry in &construction.lift {
                line(
                    "lift",
                    &[
                        entry.original.clone(),
                        entry.ordinal.to_string(),
                        entry.fresh.clone(),
                    ],
                );
            }
        }
        line("end", &[]);
        out
    }

    /// Parses document text; strict about keys, order of segment indices,
    /// and the trailing `end` marker.
    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        let mut magic_seen = false;
        let mut ended = false;
        let mut schema_version: Option<String> = None;
        let mut u: Option<Vec<String>> = None;
        let mut v: Option<Vec<String>> = None;
        let mut u_expanded: Option<Vec<String>> = None;
        let mut v_expanded: Option<Vec<String>> = None;
        let mut distinguished: Option<Vec<usize>> = None;
        let mut offset: Option<usize> = None;
        let mut expanded_length: Option<usize> = None;
        let mut segment_count: Option<usize> = None;
        let mut segments: Vec<Vec<String>> = Vec::new();
        let mut n: Option<usize> = None;
        let mut m: Option<usize> = None;
        let mut p: Option<usize> = None;
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut lift: Vec<LiftEntry> = Vec::new();

        for (index, raw) in text.lines().enumerate() {
            let line = index + 1;
            if raw.trim().is_empty() {
                continue;
            }
            if ended {
                return Err(DocumentError::TrailingContent { line });
            }
            if !magic_seen {
                if raw.trim() != MAGIC {
                    return Err(DocumentError::BadMagic);
                }
                magic_seen = true;
                continue;
            }
            let mut parts = raw.split_whitespace();
            let key = parts.next().expect("non-empty line has a first token");
            let values: Vec<&str> = parts.collect();
            let parse_numbers = |values: &[&str]| -> Result<Vec<usize>, DocumentError> {
                values
                    .iter()
                    .map(|value| value.parse::<usize>().map_err(|_| DocumentError::BadInteger { line }))
                    .collect()
            };
            let parse_number = |values: &[&str]| -> Result<usize, DocumentError> {
                if values.len() != 1 {
                    return Err(DocumentError::BadInteger { line });
                }
                values[0]
                    .parse::<usize>()
                    .map_err(|_| DocumentError::BadInteger { line })
            };
            let strings = |values: &[&str]| values.iter().map(|s| s.to_string()).collect::<Vec<_>>();

            macro_rules! set_once {
                ($slot:ident, $value:expr) => {{
                    if $slot.is_some() {
                        return Err(DocumentError::DuplicateField {
                            field: stringify!($slot),
                            line,
                        });
                    }
                    $slot = Some($value);
                }};
            }

            match key {
                "schema_version" => {
                    if values.len() != 1 {
                        return Err(DocumentError::UnsupportedVersion {
                            found: values.join(" "),
                        });
                    }
                    set_once!(schema_version, values[0].to_string());
                }
                "u" => set_once!(u, strings(&values)),
                "v" => set_once!(v, strings(&values)),
                "u_expanded" => set_once!(u_expanded, strings(&values)),
                "v_expanded" => set_once!(v_expanded, strings(&values)),
                "distinguished" => set_once!(distinguished, parse_numbers(&values)?),
                "offset" => set_once!(offset, parse_number(&values)?),
                "expanded_length" => set_once!(expanded_length, parse_number(&values)?),
                "segments" => set_once!(segment_count, parse_number(&values)?),
                "segment" => {
                    if values.is_empty() {
                        return Err(DocumentError::BadSegmentIndex { line });
                    }
                    let index: usize = values[0]
                        .parse()
                        .map_err(|_| DocumentError::BadSegmentIndex { line })?;
                    if index != segments.len() {
                        return Err(DocumentError::BadSegmentIndex { line });
                    }
                    segments.push(strings(&values[1..]));
                }
                "n" => set_once!(n, parse_number(&values)?),
                "m" => set_once!(m, parse_number(&values)?),
                "p" => set_once!(p, parse_number(&values)?),
                "cycle" => cycles.push(parse_numbers(&values)?),
                "lift" => {
                    if values.len() != 3 {
                        return Err(DocumentError::BadLiftEntry { line });
                    }
                    let ordinal: usize = values[1]
                        .parse()
                        .map_err(|_| DocumentError::BadLiftEntry { line })?;
                    lift.push(LiftEntry {
                        original: values[0].to_string(),
                        ordinal,
                        fresh: values[2].to_string(),
                    });
                }
                "end" => ended = true,
                _ => {
                    return Err(DocumentError::UnknownKey {
                        key: key.to_string(),
                        line,
                    })
                }
            }
        }

        if !magic_seen {
            return Err(DocumentError::BadMagic);
        }
        if !ended {
            return Err(DocumentError::Truncated);
        }
        let schema_version = schema_version.ok_or(DocumentError::MissingField {
            field: "schema_version",
        })?;
        if schema_version != SCHEMA_VERSION {
            return Err(DocumentError::UnsupportedVersion {
                found: schema_version,
            });
        }
        let segment_count = segment_count.ok_or(DocumentError::MissingField { field: "segments" })?;
        if segments.len() != segment_count {
            return Err(DocumentError::Inconsistent {
                what: format!(
                    "segments field says {segment_count}, found {} segment lines",
                    segments.len()
                ),
            });
        }
        let construction = match (n, m, p) {
            (None, None, None) if cycles.is_empty() && lift.is_empty() => None,
            (Some(n), Some(m), Some(p)) => Some(ConstructionMeta {
                n,
                m,
                p,
                cycles,
                lift,
            }),
            _ => {
                return Err(DocumentError::Inconsistent {
                    what: "incomplete construction block".to_string(),
                })
            }
        };

        Ok(CertificateDocument {
            schema_version,
            u: u.ok_or(DocumentError::MissingField { field: "u" })?,
            v: v.ok_or(DocumentError::MissingField { field: "v" })?,
            u_expanded: u_expanded.ok_or(DocumentError::MissingField { field: "u_expanded" })?,
            v_expanded: v_expanded.ok_or(DocumentError::MissingField { field: "v_expanded" })?,
            distinguished: distinguished.ok_or(DocumentError::MissingField {
                field: "distinguished",
            })?,
            insertion_segments: segments,
            offset: offset.ok_or(DocumentError::MissingField { field: "offset" })?,
            expanded_length: expanded_length.ok_or(DocumentError::MissingField {
                field: "expanded_length",
            })?,
            construction,
        })
    }

    /// Rebuilds the certificate over a fresh alphabet interned from the
    /// document's tokens. Structural defects (bad tokens, out-of-range
    /// offset, non-increasing positions) are document errors; everything
    /// semantic is left to `verify_certificate`.
    pub fn to_certificate(&self) -> Result<(EqualizationCertificate, Alphabet), DocumentError> {
        let mut alphabet = Alphabet::new();
        let mut word = |tokens: &[String]| -> Result<Word, DocumentError> {
            alphabet
                .word_from_tokens(tokens)
                .map_err(|error| DocumentError::BadToken {
                    message: error.to_string(),
                })
        };
        let u = word(&self.u)?;
        let v = word(&self.v)?;
        let u_expanded = word(&self.u_expanded)?;
        let v_expanded = word(&self.v_expanded)?;
        let segments = self
            .insertion_segments
            .iter()
            .map(|segment| word(segment))
            .collect::<Result<Vec<_>, _>>()?;

        if self.expanded_length != u_expanded.len() {
            return Err(DocumentError::Inconsistent {
                what: format!(
                    "expanded_length {} but u_expanded has {} letters",
                    self.expanded_length,
                    u_expanded.len()
                ),
            });
        }
        let distinguished =
            DistinguishedPositions::new(self.distinguished.clone()).map_err(|error| {
                DocumentError::Inconsistent {
                    what: error.to_string(),
                }
            })?;
        let insertion =
            SimultaneousInsertion::new(segments).map_err(|error| DocumentError::Inconsistent {
                what: error.to_string(),
            })?;
        let offset = if self.expanded_length == 0 {
            if self.offset != 0 {
                return Err(DocumentError::Inconsistent {
                    what: format!("offset {} for empty expanded words", self.offset),
                });
            }
            CyclicOffset::empty()
        } else {
            CyclicOffset::new(self.offset, self.expanded_length).map_err(|error| {
                DocumentError::Inconsistent {
                    what: error.to_string(),
                }
            })?
        };

        Ok((
            EqualizationCertificate {
                u,
                v,
                u_expanded,
                v_expanded,
                distinguished,
                insertion,
                offset,
            },
            alphabet,
        ))
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum DocumentError {
    BadMagic,
    UnsupportedVersion { found: String },
    MissingField { field: &'static str },
    DuplicateField { field: &'static str, line: usize },
    UnknownKey { key: String, line: usize },
    BadInteger { line: usize },
    BadSegmentIndex { line: usize },
    BadLiftEntry { line: usize },
    TrailingContent { line: usize },
    Truncated,
    BadToken { message: String },
    Inconsistent { what: String },
}

impl fmt::Display for DocumentError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DocumentError::BadMagic => {
                write!(f, "not a certificate document (expected `{MAGIC}`)")
            }
            DocumentError::UnsupportedVersion { found } => {
                write!(f, "unsupported schema version {found:?}")
            }
            DocumentError::MissingField { field } => write!(f, "missing field {field}"),
            DocumentError::DuplicateField { field, line } => {
                write!(f, "duplicate field {field} on line {line}")
            }
            DocumentError::UnknownKey { key, line } => {
                write!(f, "unknown key {key:?} on line {line}")
            }
            DocumentError::BadInteger { line } => write!(f, "bad integer on line {line}"),
            DocumentError::BadSegmentIndex { line } => {
                write!(f, "bad or out-of-order segment index on line {line}")
            }
            DocumentError::BadLiftEntry { line } => write!(f, "bad lift entry on line {line}"),
            DocumentError::TrailingContent { line } => {
                write!(f, "content after `end` on line {line}")
            }
            DocumentError::Truncated => write!(f, "truncated document (missing `end`)"),
            DocumentError::BadToken { message } => write!(f, "bad letter token: {message}"),
            DocumentError::Inconsistent { what } => write!(f, "inconsistent document: {what}"),
        }
    }
}

impl std::error::Error for DocumentError {}

/// Positions of the base letters induced by an insertion, for building
/// documents of hand-assembled certificates in tests.
pub fn induced_positions(insertion: &SimultaneousInsertion) -> Vec<usize> {
    let mut positions = Vec::with_capacity(insertion.base_length());
    let mut position = 0usize;
    for segment in insertion.segments().iter().take(insertion.base_length()) {
        position += segment.len();
        positions.push(position);
        position += 1;
    }
    positions
}

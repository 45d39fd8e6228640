//! Parsing and rendering helpers shared by the `boxgraphs` binary and its
//! integration tests.

use boxgraphs::direction::{DirSet, DirectionVector};
use boxgraphs::rational::{decimal6, format_rational, Rational};
use boxgraphs::{Error, Result};

/// Parse a direction vector literal like `"3: {2,3} {1,3} {1,2}"`.
/// Dimension before the colon, one brace group per part; `{}` is the empty
/// set. Errors carry the byte position of the offending token.
pub fn parse_direction_literal(s: &str) -> Result<DirectionVector> {
    let colon = s.find(':').ok_or_else(|| Error::Parse {
        pos: s.len(),
        msg: "expected ':' after the dimension".into(),
    })?;
    let dim_str = s[..colon].trim();
    let d: usize = dim_str.parse().map_err(|_| Error::Parse {
        pos: 0,
        msg: format!("bad dimension {dim_str:?}"),
    })?;

    let bytes = s.as_bytes();
    let mut sets = Vec::new();
    let mut i = colon + 1;
    while i < s.len() {
        if bytes[i].is_ascii_whitespace() {
            i += 1;
            continue;
        }
        if bytes[i] != b'{' {
            return Err(Error::Parse {
                pos: i,
                msg: format!("expected '{{', found {:?}", s[i..].chars().next().unwrap()),
            });
        }
        let close = s[i..].find('}').map(|o| i + o).ok_or(Error::Parse {
            pos: i,
            msg: "unclosed '{'".into(),
        })?;
        let inner = &s[i + 1..close];
        let mut axes = Vec::new();
        if !inner.trim().is_empty() {
            for piece in inner.split(',') {
                let p = piece.trim();
                if p.is_empty() {
                    return Err(Error::Parse {
                        pos: i,
                        msg: "empty axis entry".into(),
                    });
                }
                axes.push(p.parse::<usize>().map_err(|_| Error::Parse {
                    pos: i,
                    msg: format!("bad axis {p:?}"),
                })?);
            }
        }
        sets.push(DirSet::from_axes(&axes)?);
        i = close + 1;
    }
    DirectionVector::new(d, sets)
}

/// Parse a comma-separated list of positive sizes, e.g. `"4,6,4"`.
pub fn parse_sizes(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|p| {
            let p = p.trim();
            p.parse::<usize>().map_err(|_| Error::Parse {
                pos: 0,
                msg: format!("bad size {p:?}"),
            })
        })
        .collect()
}

/// The branch of the dichotomy a vector falls into.
pub fn branch_label(coherent: bool) -> &'static str {
    if coherent {
        "Ω(t n^{r-1} log n/log log n)"
    } else {
        "Θ_r(t n^{r-1})"
    }
}

/// One line of experiment output. `g_value` is exact; `ratio` is rendered
/// with six decimal digits.
#[derive(Clone, Debug)]
pub struct ExperimentRow {
    pub construction: String,
    pub params: String,
    pub n_total: usize,
    pub edges: u64,
    pub g_value: Rational,
    pub ratio: Rational,
    pub free_t: usize,
    pub certified: String,
}

pub const CSV_HEADER: [&str; 8] = [
    "construction",
    "params",
    "n_total",
    "edges",
    "g_t",
    "ratio",
    "free_t",
    "certified",
];

impl ExperimentRow {
    pub fn record(&self) -> [String; 8] {
        [
            self.construction.clone(),
            self.params.clone(),
            self.n_total.to_string(),
            self.edges.to_string(),
            format_rational(&self.g_value),
            decimal6(&self.ratio),
            self.free_t.to_string(),
            self.certified.clone(),
        ]
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rec = self.record();
        let mut obj = serde_json::Map::new();
        for (k, v) in CSV_HEADER.iter().zip(rec) {
            obj.insert((*k).into(), v.into());
        }
        obj.into()
    }
}

/// Process exit code for a library error: 3 when a budget or size cap was
/// hit, 2 for everything else (bad input of some kind). Bound violations
/// exit 1 but are not errors.
pub fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::BudgetExceeded { .. } | Error::TooLarge(_) => 3,
        _ => 2,
    }
}

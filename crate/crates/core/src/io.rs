//! JSON persistence for box families.
//!
//! Layout:
//!
//! ```json
//! {
//!   "dimension": 2,
//!   "direction_vector": [[1], [1, 2]],
//!   "parts": [
//!     [ [[0, 0], [0, 3]] ],
//!     [ [["1/2", 2], [0, 1]] ]
//!   ]
//! }
//! ```
//!
//! A box is an array of `[lo, hi]` pairs, one per coordinate, collapsed
//! sides included. Coordinates are plain JSON integers or `"p/q"` strings;
//! floats are rejected to keep everything exact. Loading re-validates that
//! every box matches its part's declared direction set.

use std::fs;
use std::path::Path;

use serde_json::{json, Value};

use crate::direction::{DirSet, DirectionVector};
use crate::error::{Error, Result};
use crate::family::BoxFamily;
use crate::geometry::{AxisBox, Interval};
use crate::rational::{format_rational, parse_rational, rat, rational_to_i64, Rational};

fn rational_to_value(x: &Rational) -> Value {
    match rational_to_i64(x) {
        Some(n) => json!(n),
        None => json!(format_rational(x)),
    }
}

fn rational_from_value(v: &Value) -> Result<Rational> {
    match v {
        Value::Number(n) => n.as_i64().map(rat).ok_or_else(|| Error::Parse {
            pos: 0,
            msg: format!("coordinate {n} is not an exact integer; use a \"p/q\" string"),
        }),
        Value::String(s) => parse_rational(s, 0),
        other => Err(Error::Parse {
            pos: 0,
            msg: format!("coordinate must be an integer or \"p/q\" string, got {other}"),
        }),
    }
}

pub fn family_to_json(fam: &BoxFamily) -> Value {
    let f = fam.direction_vector();
    let sets: Vec<Value> = f
        .sets()
        .iter()
        .map(|s| Value::from(s.iter().collect::<Vec<usize>>()))
        .collect();
    let parts: Vec<Value> = fam
        .parts()
        .iter()
        .map(|part| {
            Value::from(
                part.iter()
                    .map(|b| {
                        Value::from(
                            b.sides()
                                .iter()
                                .map(|s| {
                                    Value::from(vec![
                                        rational_to_value(s.lo()),
                                        rational_to_value(s.hi()),
                                    ])
                                })
                                .collect::<Vec<Value>>(),
                        )
                    })
                    .collect::<Vec<Value>>(),
            )
        })
        .collect();
    json!({
        "dimension": f.dimension(),
        "direction_vector": sets,
        "parts": parts,
    })
}

fn field<'a>(v: &'a Value, name: &str) -> Result<&'a Value> {
    v.get(name).ok_or_else(|| Error::Parse {
        pos: 0,
        msg: format!("missing field {name:?}"),
    })
}

fn as_array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| Error::Parse {
        pos: 0,
        msg: format!("{what} must be an array"),
    })
}

pub fn family_from_json(v: &Value) -> Result<BoxFamily> {
    let d = field(v, "dimension")?.as_u64().ok_or_else(|| Error::Parse {
        pos: 0,
        msg: "dimension must be a positive integer".into(),
    })? as usize;

    let mut sets = Vec::new();
    for entry in as_array(field(v, "direction_vector")?, "direction_vector")? {
        let axes: Vec<usize> = as_array(entry, "direction set")?
            .iter()
            .map(|a| {
                a.as_u64().map(|x| x as usize).ok_or_else(|| Error::Parse {
                    pos: 0,
                    msg: format!("direction set entry {a} must be an axis number"),
                })
            })
            .collect::<Result<_>>()?;
        sets.push(DirSet::from_axes(&axes)?);
    }
    let f = DirectionVector::new(d, sets)?;

    let mut parts = Vec::new();
    for part in as_array(field(v, "parts")?, "parts")? {
        let mut boxes = Vec::new();
        for bx in as_array(part, "part")? {
            let sides_json = as_array(bx, "box")?;
            let mut sides = Vec::new();
            for side in sides_json {
                let pair = as_array(side, "side")?;
                if pair.len() != 2 {
                    return Err(Error::Parse {
                        pos: 0,
                        msg: format!("side must be a [lo, hi] pair, got {side}"),
                    });
                }
                sides.push(Interval::new(
                    rational_from_value(&pair[0])?,
                    rational_from_value(&pair[1])?,
                )?);
            }
            boxes.push(AxisBox::new(sides)?);
        }
        parts.push(boxes);
    }
    BoxFamily::new(f, parts)
}

pub fn save_family(path: &Path, fam: &BoxFamily) -> Result<()> {
    let mut text = serde_json::to_string_pretty(&family_to_json(fam))?;
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}

pub fn load_family(path: &Path) -> Result<BoxFamily> {
    let text = fs::read_to_string(path)?;
    family_from_json(&serde_json::from_str(&text)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    fn sample() -> BoxFamily {
        let f = DirectionVector::new(
            2,
            vec![DirSet::from_axes(&[1]).unwrap(), DirSet::full(2)],
        )
        .unwrap();
        let b1 = AxisBox::new(vec![
            Interval::new(frac(1, 2), rat(2)).unwrap(),
            Interval::point(rat(3)),
        ])
        .unwrap();
        let b2 = AxisBox::from_ints(&[(-1, 1), (0, 4)]).unwrap();
        BoxFamily::new(f, vec![vec![b1], vec![b2]]).unwrap()
    }

    #[test]
    fn roundtrip() {
        let fam = sample();
        let v = family_to_json(&fam);
        assert_eq!(family_from_json(&v).unwrap(), fam);
        assert_eq!(v["parts"][0][0][0][0], json!("1/2"));
        assert_eq!(v["parts"][0][0][0][1], json!(2));
    }

    #[test]
    fn file_roundtrip() {
        let fam = sample();
        let path = std::env::temp_dir().join("boxgraphs-io-roundtrip.json");
        save_family(&path, &fam).unwrap();
        assert_eq!(load_family(&path).unwrap(), fam);
        let _ = fs::remove_file(&path);
    }

    #[test]
    fn rejects_floats_and_mismatches() {
        let v = json!({
            "dimension": 1,
            "direction_vector": [[1], [1]],
            "parts": [[[[0.5, 2]]], [[[0, 1]]]]
        });
        assert!(matches!(family_from_json(&v), Err(Error::Parse { .. })));

        // declared flat but given an extended side
        let v = json!({
            "dimension": 1,
            "direction_vector": [[], [1]],
            "parts": [[[[0, 2]]], [[[0, 1]]]]
        });
        assert!(matches!(family_from_json(&v), Err(Error::Conformance(_))));
    }
}

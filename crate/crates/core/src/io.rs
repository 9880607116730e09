//! File formats.
//!
//! State files are `{"dims":[d1,...,dm],"amps":[[re,im],...]}` with amplitudes
//! in row-major order, mode 1 most significant. Each part is a JSON number or
//! a string holding an exact rational `"p/q"`. Numbers are read through their
//! decimal text, so `0.1` is exactly `1/10` in exact mode.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::Serialize;
use serde_json::Value;

use crate::error::Error;
use crate::grassmann::PlueckerSet;
use crate::scalar::{parse_rational, GaussRat, Scalar};
use crate::segre::MeasureReport;
use crate::state::{Bipartition, LocalState, PureState};

/// A rejected input, naming the first offending field.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("{field}: {reason}")]
pub struct FormatError {
    pub field: String,
    pub reason: String,
}

impl FormatError {
    fn new(field: impl Into<String>, reason: impl Into<String>) -> Self {
        FormatError {
            field: field.into(),
            reason: reason.into(),
        }
    }
}

/// How amplitudes are read and written.
pub trait JsonScalar: Scalar {
    fn from_parts(re: &Value, im: &Value, field: &str) -> Result<Self, FormatError>;
    fn to_parts(&self) -> [Value; 2];
}

fn number_text(v: &Value, field: &str) -> Result<String, FormatError> {
    match v {
        Value::Number(n) => Ok(n.to_string()),
        Value::String(s) => Ok(s.clone()),
        _ => Err(FormatError::new(field, "expected a number or a \"p/q\" string")),
    }
}

impl JsonScalar for GaussRat {
    fn from_parts(re: &Value, im: &Value, field: &str) -> Result<Self, FormatError> {
        let part = |v: &Value, which: usize| {
            let f = format!("{field}[{which}]");
            let text = number_text(v, &f)?;
            parse_rational(&text).map_err(|e| FormatError::new(f, e.to_string()))
        };
        Ok(GaussRat::new(part(re, 0)?, part(im, 1)?))
    }

    fn to_parts(&self) -> [Value; 2] {
        let text = |r: &num_rational::BigRational| {
            if r.is_integer() {
                r.numer().to_string()
            } else {
                format!("{}/{}", r.numer(), r.denom())
            }
        };
        [Value::String(text(&self.re)), Value::String(text(&self.im))]
    }
}

impl JsonScalar for Complex64 {
    fn from_parts(re: &Value, im: &Value, field: &str) -> Result<Self, FormatError> {
        let part = |v: &Value, which: usize| -> Result<f64, FormatError> {
            let f = format!("{field}[{which}]");
            match v {
                Value::Number(n) => n.as_f64().ok_or_else(|| FormatError::new(f, "number out of range")),
                Value::String(s) => parse_rational(s)
                    .map(|r| GaussRat::real(r).to_complex64().re)
                    .map_err(|e| FormatError::new(f, e.to_string())),
                _ => Err(FormatError::new(f, "expected a number or a \"p/q\" string")),
            }
        };
        Ok(Complex64::new(part(re, 0)?, part(im, 1)?))
    }

    fn to_parts(&self) -> [Value; 2] {
        [float_value(self.re), float_value(self.im)]
    }
}

fn float_value(x: f64) -> Value {
    serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
}

fn parse_amp_list<T: JsonScalar>(v: &Value, field: &str) -> Result<Vec<T>, FormatError> {
    let list = v.as_array().ok_or_else(|| FormatError::new(field, "expected an array of [re, im] pairs"))?;
    list.iter()
        .enumerate()
        .map(|(i, pair)| {
            let f = format!("{field}[{i}]");
            match pair.as_array().map(Vec::as_slice) {
                Some([re, im]) => T::from_parts(re, im, &f),
                _ => Err(FormatError::new(f, "expected a [re, im] pair")),
            }
        })
        .collect()
}

fn parse_object(text: &str) -> Result<serde_json::Map<String, Value>, FormatError> {
    match serde_json::from_str::<Value>(text) {
        Ok(Value::Object(map)) => Ok(map),
        Ok(_) => Err(FormatError::new("$", "expected a JSON object")),
        Err(e) => Err(FormatError::new("$", format!("malformed JSON: {e}"))),
    }
}

fn reject_unknown(map: &serde_json::Map<String, Value>, allowed: &[&str]) -> Result<(), FormatError> {
    match map.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(k) => Err(FormatError::new(k.clone(), "unknown field")),
        None => Ok(()),
    }
}

/// Parses and validates a state file. `max_amps` bounds the declared size.
pub fn parse_state<T: JsonScalar>(text: &str, max_amps: usize) -> Result<PureState<T>, FormatError> {
    let map = parse_object(text)?;
    reject_unknown(&map, &["dims", "amps"])?;
    let dims_v = map.get("dims").ok_or_else(|| FormatError::new("dims", "missing"))?;
    let dims_list = dims_v.as_array().ok_or_else(|| FormatError::new("dims", "expected an array of integers"))?;
    let dims: Vec<usize> = dims_list
        .iter()
        .enumerate()
        .map(|(i, d)| {
            d.as_u64()
                .map(|d| d as usize)
                .ok_or_else(|| FormatError::new(format!("dims[{i}]"), "expected a nonnegative integer"))
        })
        .collect::<Result<_, _>>()?;
    let total = dims.iter().try_fold(1usize, |acc, &d| acc.checked_mul(d)).unwrap_or(usize::MAX);
    if total > max_amps {
        return Err(FormatError::new("dims", format!("{total} amplitudes exceed the cap of {max_amps}")));
    }
    let amps_v = map.get("amps").ok_or_else(|| FormatError::new("amps", "missing"))?;
    let amps = parse_amp_list::<T>(amps_v, "amps")?;
    PureState::new(dims, amps).map_err(state_error)
}

fn state_error(e: Error) -> FormatError {
    let field = match &e {
        Error::InvalidDimension { mode, .. } => format!("dims[{}]", mode - 1),
        Error::TooFewModes { .. } => "dims".to_string(),
        Error::NonFinite { index } => format!("amps[{index}]"),
        _ => "amps".to_string(),
    };
    FormatError::new(field, e.to_string())
}

#[derive(Serialize)]
struct StateOut<'a> {
    dims: &'a [usize],
    amps: Vec<[Value; 2]>,
}

pub fn state_to_json<T: JsonScalar>(state: &PureState<T>) -> String {
    serde_json::to_string(&StateOut {
        dims: state.dims(),
        amps: state.amps().iter().map(JsonScalar::to_parts).collect(),
    })
    .expect("state serializes")
}

/// Parses `{"factors":[[[re,im],...],...]}`, one list per mode.
pub fn parse_factors<T: JsonScalar>(text: &str) -> Result<Vec<LocalState<T>>, FormatError> {
    let map = parse_object(text)?;
    reject_unknown(&map, &["factors"])?;
    let list = map
        .get("factors")
        .ok_or_else(|| FormatError::new("factors", "missing"))?
        .as_array()
        .ok_or_else(|| FormatError::new("factors", "expected an array of amplitude lists"))?;
    list.iter()
        .enumerate()
        .map(|(j, v)| {
            let field = format!("factors[{j}]");
            let amps = parse_amp_list::<T>(v, &field)?;
            LocalState::new(amps).map_err(|e| FormatError::new(field, e.to_string()))
        })
        .collect()
}

#[derive(Serialize)]
struct FactorsOut {
    factors: Vec<Vec<[Value; 2]>>,
}

pub fn factors_to_json<T: JsonScalar>(factors: &[LocalState<T>]) -> String {
    serde_json::to_string(&FactorsOut {
        factors: factors
            .iter()
            .map(|f| f.vec().iter().map(JsonScalar::to_parts).collect())
            .collect(),
    })
    .expect("factors serialize")
}

#[derive(Serialize)]
struct SplitTerm<'a> {
    left: &'a [usize],
    term: f64,
}

#[derive(Serialize)]
struct ReportOut<'a> {
    value: f64,
    per_bipartition: Vec<SplitTerm<'a>>,
}

/// `{"value": v, "per_bipartition": [{"left": [...], "term": t}, ...]}`, sorted.
pub fn report_to_json(report: &MeasureReport) -> String {
    serde_json::to_string(&ReportOut {
        value: report.value,
        per_bipartition: report
            .per_bipartition
            .iter()
            .map(|(b, &term)| SplitTerm { left: b.left(), term })
            .collect(),
    })
    .expect("report serializes")
}

#[derive(Serialize)]
struct CoordOut<'a> {
    #[serde(rename = "I")]
    subset: &'a [usize],
    re: Value,
    im: Value,
}

#[derive(Serialize)]
struct PlueckerOut<'a> {
    k: usize,
    #[serde(rename = "N")]
    n: usize,
    coords: Vec<CoordOut<'a>>,
}

/// `{"k":2,"N":4,"coords":[{"I":[1,2],"re":...,"im":...},...]}` sorted by `I`.
pub fn pluecker_to_json<T: JsonScalar>(ps: &PlueckerSet<T>) -> String {
    serde_json::to_string(&PlueckerOut {
        k: ps.k(),
        n: ps.n(),
        coords: ps
            .coords()
            .iter()
            .map(|(i, v)| {
                let [re, im] = v.to_parts();
                CoordOut { subset: i, re, im }
            })
            .collect(),
    })
    .expect("coordinates serialize")
}

/// Parses a comma-separated list of positive integers, e.g. `2,2,3`.
pub fn parse_index_list(text: &str, field: &str) -> Result<Vec<usize>, FormatError> {
    text.split(',')
        .enumerate()
        .map(|(i, part)| {
            part.trim()
                .parse::<usize>()
                .map_err(|_| FormatError::new(format!("{field}[{i}]"), format!("{part:?} is not a nonnegative integer")))
        })
        .collect()
}

/// Per-split terms keyed by the 1-based left side, for callers that want a plain map.
pub fn report_terms(report: &MeasureReport) -> BTreeMap<Vec<usize>, f64> {
    report
        .per_bipartition
        .iter()
        .map(|(b, &t)| (b.left().to_vec(), t))
        .collect()
}

/// Builds a bipartition from a `--partition` list, naming the field on failure.
pub fn parse_partition(text: &str, modes: usize) -> Result<Bipartition, FormatError> {
    let left = parse_index_list(text, "partition")?;
    Bipartition::new(left, modes).map_err(|e| FormatError::new("partition", e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::segre::generalized_concurrence;
    use num_traits::Zero;

    #[test]
    fn parse_float_state() {
        let s: PureState<Complex64> = parse_state(r#"{"dims":[2,2],"amps":[[1,0],[0,0],[0,0],[1,0]]}"#, 4096).unwrap();
        assert_eq!(s.dims(), &[2, 2]);
        assert_eq!(s.amps()[3], Complex64::new(1.0, 0.0));
        let s: PureState<Complex64> =
            parse_state(r#"{"dims":[2],"amps":[["1/2","-3/4"],[0.25,1e-1]]}"#, 4096).unwrap();
        assert_eq!(s.amps()[0], Complex64::new(0.5, -0.75));
        assert_eq!(s.amps()[1], Complex64::new(0.25, 0.1));
    }

    #[test]
    fn parse_exact_state() {
        let s: PureState<GaussRat> =
            parse_state(r#"{"dims":[2,2],"amps":[["1/3","0"],[0.1,0],["0","0"],["-2","7/5"]]}"#, 4096).unwrap();
        assert_eq!(s.amps()[0], GaussRat::from_fracs(1, 3, 0, 1));
        assert_eq!(s.amps()[1], GaussRat::from_fracs(1, 10, 0, 1));
        assert!(s.amps()[2].is_zero());
        assert_eq!(s.amps()[3], GaussRat::from_fracs(-2, 1, 7, 5));
    }

    fn err_field(text: &str) -> String {
        parse_state::<Complex64>(text, 4096).unwrap_err().field
    }

    #[test]
    fn errors_name_first_offending_field() {
        assert_eq!(err_field("not json"), "$");
        assert_eq!(err_field("[1,2]"), "$");
        assert_eq!(err_field(r#"{"amps":[]}"#), "dims");
        assert_eq!(err_field(r#"{"dims":[2,-1],"amps":[]}"#), "dims[1]");
        assert_eq!(err_field(r#"{"dims":[2,2],"amps":[[1,0],[0,0],[0,0]]}"#), "amps");
        assert_eq!(err_field(r#"{"dims":[2],"amps":[[1,0],[0,"x"]]}"#), "amps[1][1]");
        assert_eq!(err_field(r#"{"dims":[2],"amps":[[1,0],[0]]}"#), "amps[1]");
        assert_eq!(err_field(r#"{"dims":[2],"amps":[[0,0],[0,0]]}"#), "amps");
        assert_eq!(err_field(r#"{"dims":[2,1],"amps":[[1,0],[0,0]]}"#), "dims[1]");
        assert_eq!(err_field(r#"{"dims":[2],"amps":[[1,0],[0,0]],"extra":1}"#), "extra");
        assert_eq!(err_field(r#"{"dims":[4096,2],"amps":[]}"#), "dims");
    }

    #[test]
    fn state_json_round_trip() {
        let s = fixtures::w(3);
        let back: PureState<Complex64> = parse_state(&state_to_json(&s), 4096).unwrap();
        assert_eq!(back, s);
        let e = fixtures::ghz_exact(2).scale(&GaussRat::from_fracs(-1, 3, 2, 7)).unwrap();
        let text = state_to_json(&e);
        assert!(text.contains(r#"["-1/3","2/7"]"#), "{text}");
        assert_eq!(parse_state::<GaussRat>(&text, 4096).unwrap(), e);
    }

    #[test]
    fn report_json_shape() {
        let r = generalized_concurrence(&fixtures::ghz(3));
        let text = report_to_json(&r);
        assert!(text.starts_with(r#"{"value":"#));
        assert!(text.contains(r#""per_bipartition":[{"left":[1],"term":0.25"#), "{text}");
        assert_eq!(report_terms(&r).len(), 3);
    }

    #[test]
    fn pluecker_json_shape() {
        let m = crate::state::Flattening::from_rows(
            2,
            3,
            vec![GaussRat::from_ints(1, 0), GaussRat::from_ints(0, 0), GaussRat::from_fracs(1, 2, 0, 1),
                 GaussRat::from_ints(0, 0), GaussRat::from_ints(1, 0), GaussRat::from_ints(0, 1)],
        )
        .unwrap();
        let ps = crate::grassmann::pluecker_coordinates(&m).unwrap();
        assert_eq!(
            pluecker_to_json(&ps),
            r#"{"k":2,"N":3,"coords":[{"I":[1,2],"re":"1","im":"0"},{"I":[1,3],"re":"0","im":"1"},{"I":[2,3],"re":"-1/2","im":"0"}]}"#
        );
    }

    #[test]
    fn factors_round_trip() {
        let text = r#"{"factors":[[[1,0],[0,1]],[["1/2",0],[2,0],[0,0]]]}"#;
        let f: Vec<LocalState<GaussRat>> = parse_factors(text).unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(f[1].dim(), 3);
        assert_eq!(parse_factors::<GaussRat>(&factors_to_json(&f)).unwrap(), f);
        assert_eq!(parse_factors::<Complex64>(r#"{"factors":[[[0,0],[0,0]]]}"#).unwrap_err().field, "factors[0]");
    }

    #[test]
    fn index_lists() {
        assert_eq!(parse_index_list("2, 3,4", "dims").unwrap(), vec![2, 3, 4]);
        assert_eq!(parse_index_list("2,x", "dims").unwrap_err().field, "dims[1]");
        assert_eq!(parse_partition("1,3", 3).unwrap().left(), &[1, 3]);
        assert_eq!(parse_partition("1,2,3", 3).unwrap_err().field, "partition");
    }
}

//! JSON request and response documents.
//!
//! Numbers are written with 17 significant digits (`{:.16e}`), which is
//! enough for every `f64` to survive a write/parse cycle bit for bit.

use std::io;

use serde::{Deserialize, Serialize};

use crate::area::Geometry;
use crate::sphere::Side;
use crate::tolerance::Tolerances;

/// Input document for `area`, `midpoints`, `reconstruct` and `classify`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Request {
    pub geometry: Geometry,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub corners: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub midpoints: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub major_arc_side: Option<Side>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerances: Option<Tolerances>,
}

impl Request {
    pub fn with_corners(geometry: Geometry, corners: Vec<Vec<f64>>) -> Self {
        Self {
            geometry,
            corners: Some(corners),
            midpoints: None,
            major_arc_side: None,
            tolerances: None,
        }
    }

    pub fn with_midpoints(geometry: Geometry, midpoints: Vec<Vec<f64>>) -> Self {
        Self {
            geometry,
            corners: None,
            midpoints: Some(midpoints),
            major_arc_side: None,
            tolerances: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    Singular,
    NotRealizable,
    Invalid,
}

impl Status {
    pub fn exit_code(&self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Invalid => 2,
            Status::Singular | Status::NotRealizable => 3,
        }
    }
}

/// One line of the `verify` summary.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckSummary {
    pub name: String,
    pub samples: usize,
    /// Largest observed value of the checked quantity.
    pub max: f64,
    /// The check passes when `max < bound` and nothing errored.
    pub bound: f64,
    pub errors: usize,
    pub passed: bool,
}

/// A triangle that failed a `verify` check, in request form for replay.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Failure {
    pub check: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub request: Request,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Response {
    pub status: Status,
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub geometry: Option<Geometry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub area: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sine_half_area: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub det3: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub corners: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub midpoints: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub major_arc_side: Option<Side>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eta: Option<i8>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inner_products: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub realizable: Option<bool>,
    /// Largest coordinate mismatch after mapping the result back.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residual: Option<f64>,
    /// Largest corner mismatch between the two sphere reconstructions.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub closed_form_deviation: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub count: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub checks: Option<Vec<CheckSummary>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub failures: Option<Vec<Failure>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl Response {
    pub fn new(status: Status, command: &str) -> Self {
        Self {
            status,
            command: command.to_owned(),
            geometry: None,
            area: None,
            sine_half_area: None,
            det3: None,
            corners: None,
            midpoints: None,
            major_arc_side: None,
            class: None,
            eta: None,
            inner_products: None,
            realizable: None,
            residual: None,
            closed_form_deviation: None,
            count: None,
            seed: None,
            checks: None,
            failures: None,
            error: None,
        }
    }
}

struct SignificantDigits;

impl serde_json::ser::Formatter for SignificantDigits {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        if value.is_finite() {
            write!(writer, "{value:.16e}")
        } else {
            writer.write_all(b"null")
        }
    }
}

/// Serializes any document on one line with 17-digit numbers.
pub fn to_json<T: Serialize>(doc: &T) -> String {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, SignificantDigits);
    doc.serialize(&mut ser)
        .expect("documents contain only serializable fields");
    String::from_utf8(out).expect("serde_json writes UTF-8")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_round_trip_bitwise() {
        let values = [
            std::f64::consts::PI,
            0.1,
            -1.0 / 3.0,
            1e-300,
            f64::MAX,
            5e-324,
            0.0,
        ];
        let req = Request::with_corners(Geometry::Planar, vec![values.to_vec()]);
        let text = to_json(&req);
        let back: Request = serde_json::from_str(&text).unwrap();
        for (a, b) in back.corners.unwrap()[0].iter().zip(values.iter()) {
            assert_eq!(a.to_bits(), b.to_bits());
        }
        assert!(text.contains("3.1415926535897931e0"));
    }

    #[test]
    fn unknown_fields_rejected() {
        let doc = r#"{"geometry":"sphere","corners":[[1,0,0],[0,1,0],[0,0,1]],"extra":1}"#;
        assert!(serde_json::from_str::<Request>(doc).is_err());
        let doc = r#"{"corners":[[1,0,0],[0,1,0],[0,0,1]]}"#;
        assert!(serde_json::from_str::<Request>(doc).is_err());
        let doc = r#"{"geometry":"sphere","midpoints":[[1,0,0],[0,1,0],[0,0,1]],"tolerances":{"zero":1e-6}}"#;
        let req: Request = serde_json::from_str(doc).unwrap();
        assert_eq!(req.tolerances.unwrap().zero, 1e-6);
        assert_eq!(req.tolerances.unwrap().manifold, Tolerances::default().manifold);
    }
}

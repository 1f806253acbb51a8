//! V-matrix files: `{"entries": [["x", "1"], ["1", "y"]]}` with each entry a
//! commutative expression of degree at most one.

use serde::{Deserialize, Serialize};

use super::comm::parse_comm;
use crate::error::{Error, Result};
use crate::vmatrix::{VEntry, VMatrix};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VMatrixFile {
    pub entries: Vec<Vec<String>>,
}

impl VMatrixFile {
    pub fn from_matrix(m: &VMatrix) -> Self {
        VMatrixFile { entries: m.rows().iter().map(|r| r.iter().map(print_ventry).collect()).collect() }
    }

    pub fn to_matrix(&self) -> Result<VMatrix> {
        let rows = self
            .entries
            .iter()
            .map(|r| r.iter().map(|e| parse_ventry(e)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        VMatrix::new(rows)
    }
}

/// Parses `c + a*x + b*y` (any arrangement the commutative grammar accepts).
pub fn parse_ventry(text: &str) -> Result<VEntry> {
    let f = parse_comm(text)?;
    let den = f.den().as_constant().ok_or_else(|| not_linear(text))?;
    let num = f.num().scale(&(num_rational::BigRational::from_integer(1.into()) / den));
    VEntry::from_poly(&num).ok_or_else(|| not_linear(text))
}

fn not_linear(text: &str) -> Error {
    Error::Syntax { pos: 0, msg: format!("'{text}' is not of the form c + a*x + b*y") }
}

pub fn print_ventry(e: &VEntry) -> String {
    e.to_poly().to_string()
}

pub fn parse_vmatrix_json(text: &str) -> Result<VMatrix> {
    let file: VMatrixFile =
        serde_json::from_str(text).map_err(|e| Error::Syntax { pos: e.column(), msg: e.to_string() })?;
    file.to_matrix()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn entries() {
        assert_eq!(parse_ventry("2*x - y + 1").unwrap(), VEntry::from_ints(1, 2, -1));
        assert_eq!(parse_ventry("(x + 3)/2").unwrap().c, num_rational::BigRational::new(3.into(), 2.into()));
        assert!(parse_ventry("x*y").is_err());
        assert!(parse_ventry("1/x").is_err());
        for e in [VEntry::from_ints(1, 2, -1), VEntry::zero(), VEntry::var_y()] {
            assert_eq!(parse_ventry(&print_ventry(&e)).unwrap(), e);
        }
    }

    #[test]
    fn json_file() {
        let m = parse_vmatrix_json(r#"{"entries": [["x", "1"], ["1", "y"]]}"#).unwrap();
        assert_eq!(m.size(), 2);
        assert_eq!(m.get(1, 1), &VEntry::var_y());
        assert_eq!(VMatrixFile::from_matrix(&m).to_matrix().unwrap(), m);
        assert!(parse_vmatrix_json(r#"{"entries": [["x", "1"]]}"#).is_err());
        assert!(parse_vmatrix_json("{").is_err());
    }
}

//! Serialized forms of the value types.
//!
//! Complex numbers are `[re, im]` pairs. A polynomial is its coefficient list
//! in ascending degree; a factored polynomial is
//! `{"leading": c, "factors": [{"root": a, "mult": m}, ...]}` (`leading`
//! defaults to 1); a matrix is `{"order": q, "entries": [...]}` in row-major
//! order; jets and principal parts are `{"center": a, "coeffs": [...]}`.
//! Unknown fields are rejected and every payload is validated by the same
//! constructor as in-memory values.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::jets::{Jet, PrincipalPart};
use crate::scalar::{ComplexMatrix, Factor, FactoredPoly, Poly};

impl From<Vec<Complex64>> for Poly {
    fn from(coeffs: Vec<Complex64>) -> Self {
        Poly::new(coeffs)
    }
}

impl From<Poly> for Vec<Complex64> {
    fn from(p: Poly) -> Self {
        p.into_coeffs()
    }
}

fn one() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactoredWire {
    #[serde(default = "one")]
    pub leading: Complex64,
    pub factors: Vec<Factor>,
}

impl TryFrom<FactoredWire> for FactoredPoly {
    type Error = Error;

    fn try_from(w: FactoredWire) -> Result<Self, Error> {
        FactoredPoly::new(w.leading, w.factors.into_iter().map(|f| (f.root, f.mult)))
    }
}

impl From<FactoredPoly> for FactoredWire {
    fn from(fp: FactoredPoly) -> Self {
        FactoredWire {
            leading: fp.leading(),
            factors: fp.factors().to_vec(),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixWire {
    pub order: usize,
    pub entries: Vec<Complex64>,
}

impl TryFrom<MatrixWire> for ComplexMatrix {
    type Error = Error;

    fn try_from(w: MatrixWire) -> Result<Self, Error> {
        ComplexMatrix::from_row_major(w.order, w.entries)
    }
}

impl From<ComplexMatrix> for MatrixWire {
    fn from(m: ComplexMatrix) -> Self {
        MatrixWire {
            order: m.order(),
            entries: m.entries().to_vec(),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LocalWire {
    pub center: Complex64,
    pub coeffs: Vec<Complex64>,
}

impl TryFrom<LocalWire> for Jet {
    type Error = Error;

    fn try_from(w: LocalWire) -> Result<Self, Error> {
        Jet::try_new(w.center, w.coeffs)
    }
}

impl From<Jet> for LocalWire {
    fn from(j: Jet) -> Self {
        LocalWire {
            center: j.center(),
            coeffs: j.coeffs().to_vec(),
        }
    }
}

impl TryFrom<LocalWire> for PrincipalPart {
    type Error = Error;

    fn try_from(w: LocalWire) -> Result<Self, Error> {
        if w.coeffs.is_empty() {
            return Err(Error::InvalidInput(
                "a principal part needs at least one coefficient".into(),
            ));
        }
        Ok(PrincipalPart::new(w.center, w.coeffs))
    }
}

impl From<PrincipalPart> for LocalWire {
    fn from(p: PrincipalPart) -> Self {
        LocalWire {
            center: p.center(),
            coeffs: p.coeffs().to_vec(),
        }
    }
}

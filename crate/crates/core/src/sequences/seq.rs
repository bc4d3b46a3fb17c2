use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use crate::arith::rational::{display_rational, serde_rational_vec, Rational};
use crate::arith::BigFloat;

/// Finite exact sequence; `values[i]` is the term with index `offset + i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalSeq {
    pub offset: i64,
    #[serde(with = "serde_rational_vec")]
    pub values: Vec<Rational>,
}

impl RationalSeq {
    pub fn new(offset: i64, values: Vec<Rational>) -> Self {
        Self { offset, values }
    }

    pub fn from_zero(values: Vec<Rational>) -> Self {
        Self::new(0, values)
    }

    /// Term with absolute index `n`, if stored.
    pub fn get(&self, n: i64) -> Option<&Rational> {
        usize::try_from(n - self.offset).ok().and_then(|i| self.values.get(i))
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Space-separated display form, integers without `/1`.
    pub fn to_plain(&self) -> String {
        self.values.iter().map(display_rational).collect::<Vec<_>>().join(" ")
    }
}

/// Numeric sequence at a common working precision.
#[derive(Clone, Debug, PartialEq)]
pub struct FloatSeq {
    pub precision: usize,
    pub values: Vec<BigFloat>,
}

impl Serialize for FloatSeq {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("FloatSeq", 2)?;
        st.serialize_field("precision", &self.precision)?;
        let vals: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        st.serialize_field("values", &vals)?;
        st.end()
    }
}

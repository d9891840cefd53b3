//! Exact rational values and their JSON form (`"p/q"`, or `"p"` when integral).

use num_rational::Ratio;
use serde::Serializer;

pub type Rational = Ratio<i64>;

pub(crate) fn ser<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(r)
}

pub(crate) fn ser_opt<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.collect_str(r),
        None => s.serialize_none(),
    }
}

pub fn int(x: i64) -> Rational {
    Rational::from_integer(x)
}

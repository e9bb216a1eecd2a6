//! JSON encodings of the exchange types.
//!
//! * scalar: `"p/q"` (or an integer) for real values, `{"re": "p/q", "im": "p/q"}` otherwise
//! * linear form: `{"coeffs": [scalar…]}`
//! * quadratic form: `{"n": k, "terms": [[i, j, c]…]}`, the coefficient of `x_i x_j`, `i ≤ j`
//! * linear space: `{"n": k, "basis": [[scalar…]…]}`
//! * polynomial: `{"n": k, "terms": [{"exp": [e…], "c": scalar}…]}`
//! * point configuration: `{"mode": "vectors" | "affine_points", "points": [[scalar…]…]}`
//! * colored configuration: `{"mode": …, "sets": [[[scalar…]…]…]}`
//! * triple: `{"T1": [qform…], "T2": […], "T3": […], "meta": {…}}`
//! * circuit: `{"n": k, "gates": [[qform…], [qform…], [qform…]]}`

use num_traits::Zero;
use serde_json::{json, Value};

use crate::error::{QsgError, Result};
use crate::field::{format_rational, parse_rational, Scalar};
use crate::ideals::MPoly;
use crate::pit::Circuit;
use crate::qform::{LinForm, LinSpace, QForm};
use crate::quadsg::{Meta, QuadTriple};
use crate::sg::{ColoredConfig, Mode, PointConfig};

pub trait Json: Sized {
    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self>;

    fn from_json_str(s: &str) -> Result<Self> {
        Self::from_json(&serde_json::from_str(s)?)
    }
}

fn bad(what: &str) -> QsgError {
    QsgError::Parse(format!("expected {what}"))
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| QsgError::Parse(format!("missing field `{key}`")))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| bad(what))
}

fn usize_of(v: &Value, what: &str) -> Result<usize> {
    v.as_u64().map(|x| x as usize).ok_or_else(|| bad(what))
}

fn rational_of(v: &Value) -> Result<num_rational::BigRational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) if n.is_i64() || n.is_u64() => parse_rational(&n.to_string()),
        _ => Err(bad("a rational as a string or integer")),
    }
}

impl Json for Scalar {
    fn to_json(&self) -> Value {
        if self.im().is_zero() {
            Value::String(format_rational(self.re()))
        } else {
            json!({"re": format_rational(self.re()), "im": format_rational(self.im())})
        }
    }

    fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::Object(_) => {
                let re = v.get("re").map(rational_of).transpose()?.unwrap_or_else(Zero::zero);
                let im = v.get("im").map(rational_of).transpose()?.unwrap_or_else(Zero::zero);
                Ok(Scalar::new(re, im))
            }
            _ => Ok(Scalar::real(rational_of(v)?)),
        }
    }
}

fn vec_to_json(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(Json::to_json).collect())
}

fn vec_from_json(v: &Value) -> Result<Vec<Scalar>> {
    array(v, "a list of scalars")?.iter().map(Scalar::from_json).collect()
}

fn rows_from_json(v: &Value) -> Result<Vec<Vec<Scalar>>> {
    array(v, "a list of vectors")?.iter().map(vec_from_json).collect()
}

impl Json for LinForm {
    fn to_json(&self) -> Value {
        json!({"coeffs": vec_to_json(self.coeffs())})
    }

    fn from_json(v: &Value) -> Result<Self> {
        Ok(LinForm::new(vec_from_json(field(v, "coeffs")?)?))
    }
}

impl Json for QForm {
    fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .to_monomials()
            .iter()
            .map(|(&(i, j), c)| json!([i, j, c.to_json()]))
            .collect();
        json!({"n": self.n(), "terms": terms})
    }

    fn from_json(v: &Value) -> Result<Self> {
        let n = usize_of(field(v, "n")?, "`n` as a count")?;
        let mut mons = Vec::new();
        for t in array(field(v, "terms")?, "a list of terms")? {
            let t = array(t, "a term [i, j, c]")?;
            if t.len() != 3 {
                return Err(bad("a term [i, j, c]"));
            }
            let (i, j) = (usize_of(&t[0], "an index")?, usize_of(&t[1], "an index")?);
            for idx in [i, j] {
                if idx >= n {
                    return Err(QsgError::IndexOutOfRange { index: idx, n });
                }
            }
            mons.push(((i, j), Scalar::from_json(&t[2])?));
        }
        QForm::from_monomials(n, mons)
    }
}

impl Json for LinSpace {
    fn to_json(&self) -> Value {
        json!({"n": self.n(), "basis": self.basis().iter().map(|r| vec_to_json(r)).collect::<Vec<_>>()})
    }

    fn from_json(v: &Value) -> Result<Self> {
        let n = usize_of(field(v, "n")?, "`n` as a count")?;
        LinSpace::from_rows(n, rows_from_json(field(v, "basis")?)?)
    }
}

impl Json for MPoly {
    fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms()
            .iter()
            .map(|(e, c)| json!({"exp": e, "c": c.to_json()}))
            .collect();
        json!({"n": self.n(), "terms": terms})
    }

    fn from_json(v: &Value) -> Result<Self> {
        let n = usize_of(field(v, "n")?, "`n` as a count")?;
        let mut terms = Vec::new();
        for t in array(field(v, "terms")?, "a list of terms")? {
            let exp = array(field(t, "exp")?, "an exponent list")?
                .iter()
                .map(|e| e.as_u64().and_then(|x| u32::try_from(x).ok()).ok_or_else(|| bad("an exponent")))
                .collect::<Result<Vec<u32>>>()?;
            terms.push((exp, Scalar::from_json(field(t, "c")?)?));
        }
        MPoly::from_terms(n, terms)
    }
}

fn mode_of(v: &Value) -> Result<Mode> {
    Ok(serde_json::from_value(field(v, "mode")?.clone())?)
}

fn mode_json(m: Mode) -> Value {
    serde_json::to_value(m).expect("mode serializes")
}

fn infer_n<'a>(mut rows: impl Iterator<Item = &'a Vec<Scalar>>, v: &Value) -> Result<usize> {
    match v.get("n") {
        Some(n) => usize_of(n, "`n` as a count"),
        None => rows.next().map(Vec::len).ok_or_else(|| bad("at least one point or an explicit `n`")),
    }
}

impl Json for PointConfig {
    fn to_json(&self) -> Value {
        json!({
            "mode": mode_json(self.mode()),
            "n": self.n(),
            "points": self.points().iter().map(|p| vec_to_json(p)).collect::<Vec<_>>(),
        })
    }

    fn from_json(v: &Value) -> Result<Self> {
        let pts = rows_from_json(field(v, "points")?)?;
        let n = infer_n(pts.iter(), v)?;
        PointConfig::new(n, pts, mode_of(v)?)
    }
}

impl Json for ColoredConfig {
    fn to_json(&self) -> Value {
        let sets: Vec<Value> = self
            .sets()
            .iter()
            .map(|s| Value::Array(s.iter().map(|p| vec_to_json(p)).collect()))
            .collect();
        json!({"mode": mode_json(self.mode()), "n": self.n(), "sets": sets})
    }

    fn from_json(v: &Value) -> Result<Self> {
        let sets = array(field(v, "sets")?, "a list of sets")?
            .iter()
            .map(rows_from_json)
            .collect::<Result<Vec<_>>>()?;
        let n = infer_n(sets.iter().flatten(), v)?;
        ColoredConfig::new(n, sets, mode_of(v)?)
    }
}

fn forms_to_json(fs: &[QForm]) -> Value {
    Value::Array(fs.iter().map(Json::to_json).collect())
}

fn forms_from_json(v: &Value) -> Result<Vec<QForm>> {
    array(v, "a list of quadratic forms")?.iter().map(QForm::from_json).collect()
}

fn common_n(fs: &[&QForm], v: &Value) -> Result<usize> {
    match v.get("n") {
        Some(n) => usize_of(n, "`n` as a count"),
        None => fs.first().map(|q| q.n()).ok_or_else(|| bad("at least one form or an explicit `n`")),
    }
}

impl Json for QuadTriple {
    fn to_json(&self) -> Value {
        let mut m = serde_json::Map::new();
        m.insert("n".into(), json!(self.n()));
        for (i, s) in self.sets().iter().enumerate() {
            m.insert(format!("T{}", i + 1), forms_to_json(s));
        }
        if let Some(meta) = &self.meta {
            m.insert("meta".into(), serde_json::to_value(meta).expect("meta serializes"));
        }
        Value::Object(m)
    }

    fn from_json(v: &Value) -> Result<Self> {
        let sets = [
            forms_from_json(field(v, "T1")?)?,
            forms_from_json(field(v, "T2")?)?,
            forms_from_json(field(v, "T3")?)?,
        ];
        let n = common_n(&sets.iter().flatten().collect::<Vec<_>>(), v)?;
        let t = QuadTriple::new(n, sets)?;
        Ok(match v.get("meta") {
            Some(m) if !m.is_null() => t.with_meta(serde_json::from_value::<Meta>(m.clone())?),
            _ => t,
        })
    }
}

impl Json for Circuit {
    fn to_json(&self) -> Value {
        json!({"n": self.n(), "gates": self.gates().iter().map(|g| forms_to_json(g)).collect::<Vec<_>>()})
    }

    fn from_json(v: &Value) -> Result<Self> {
        let n = usize_of(field(v, "n")?, "`n` as a count")?;
        let gates = array(field(v, "gates")?, "a list of gates")?;
        if gates.len() != 3 {
            return Err(bad("exactly three gates"));
        }
        let g = [forms_from_json(&gates[0])?, forms_from_json(&gates[1])?, forms_from_json(&gates[2])?];
        Circuit::new(n, g)
    }
}

/// A single form or a list of forms.
pub fn qforms_from_json(v: &Value) -> Result<Vec<QForm>> {
    match v {
        Value::Array(_) => forms_from_json(v),
        _ => Ok(vec![QForm::from_json(v)?]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadsg::{generate, Family, GenParams};

    fn roundtrip<T: Json + PartialEq + std::fmt::Debug>(x: &T) {
        let s = serde_json::to_string(&x.to_json()).unwrap();
        assert_eq!(&T::from_json_str(&s).unwrap(), x);
    }

    #[test]
    fn roundtrips() {
        roundtrip(&Scalar::from_ratio(-3, 4));
        roundtrip(&Scalar::gaussian(2, -5));
        roundtrip(&LinForm::from_ints(&[1, 0, -2]));
        let q = QForm::from_int_terms(3, &[(0, 1, 1), (2, 2, -3)]);
        roundtrip(&q);
        roundtrip(&q.minimal_space());
        roundtrip(&MPoly::from_qform(&q));
        roundtrip(&PointConfig::from_ints(2, &[&[0, 1], &[2, 3]], Mode::AffinePoints).unwrap());
        roundtrip(&ColoredConfig::from_ints(2, &[&[&[1, 0]], &[&[0, 1]], &[&[1, 1]]], Mode::Vectors).unwrap());
        roundtrip(&generate(Family::Corrupted, &GenParams::default(), 3).unwrap());
        roundtrip(&Circuit::new(3, [vec![q.clone()], vec![q.clone(), q.clone()], vec![q]]).unwrap());
    }

    #[test]
    fn accepts_integers_and_rejects_garbage() {
        let q = QForm::from_json_str(r#"{"n":2,"terms":[[0,1,2],[1,1,"1/2"]]}"#).unwrap();
        assert_eq!(q.n(), 2);
        assert!(QForm::from_json_str(r#"{"n":2,"terms":[[0,5,1]]}"#).is_err());
        assert!(Scalar::from_json_str(r#""1/0""#).is_err());
        assert!(Circuit::from_json_str(r#"{"n":2,"gates":[]}"#).is_err());
    }
}

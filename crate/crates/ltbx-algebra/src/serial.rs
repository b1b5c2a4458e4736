//! JSON serialization of [`FuncPoly`] and [`LinDiffOp`].
//!
//! Wire format, one object per monomial in canonical order:
//!
//! ```json
//! {"coeff": [re_num, re_den, im_num, im_den],
//!  "scalars": {"B0": 2},
//!  "atoms": [{"field": "b", "d": 1, "dbar": 1}]}
//! ```
//!
//! Atoms repeat according to multiplicity; zero scalar exponents are
//! omitted; the monomial order is the canonical total order of the engine,
//! so serialization is byte-stable and used directly for golden files.

use crate::coeff::GaussRat;
use crate::diffop::LinDiffOp;
use crate::error::AlgebraError;
use crate::poly::{Field, FieldAtom, FuncPoly, Monomial, ScalarSymbol, ALL_SCALARS};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::ToPrimitive;
use serde_json::{json, Map, Value};

fn rat_parts(r: &BigRational) -> Result<(i64, i64), AlgebraError> {
    let n = r.numer().to_i64();
    let d = r.denom().to_i64();
    match (n, d) {
        (Some(n), Some(d)) => Ok((n, d)),
        _ => Err(AlgebraError::Serialization(format!(
            "coefficient {} does not fit in i64",
            r
        ))),
    }
}

pub fn funcpoly_to_json(p: &FuncPoly) -> Result<Value, AlgebraError> {
    let mut monos = Vec::new();
    for (m, c) in p.terms() {
        let (rn, rd) = rat_parts(&c.re)?;
        let (in_, id) = rat_parts(&c.im)?;
        let mut scalars = Map::new();
        for (i, &e) in m.scalars.iter().enumerate() {
            if e > 0 {
                scalars.insert(ALL_SCALARS[i].name().to_string(), json!(e));
            }
        }
        let mut atoms = Vec::new();
        for &(a, e) in &m.atoms {
            for _ in 0..e {
                atoms.push(json!({
                    "field": a.field.name(),
                    "d": a.d,
                    "dbar": a.dbar,
                }));
            }
        }
        monos.push(json!({
            "coeff": [rn, rd, in_, id],
            "scalars": Value::Object(scalars),
            "atoms": Value::Array(atoms),
        }));
    }
    Ok(Value::Array(monos))
}

pub fn funcpoly_from_json(v: &Value) -> Result<FuncPoly, AlgebraError> {
    let arr = v
        .as_array()
        .ok_or_else(|| AlgebraError::Serialization("expected array of monomials".into()))?;
    let mut p = FuncPoly::zero();
    for mono in arr {
        let coeff = mono
            .get("coeff")
            .and_then(|c| c.as_array())
            .ok_or_else(|| AlgebraError::Serialization("monomial missing coeff".into()))?;
        if coeff.len() != 4 {
            return Err(AlgebraError::Serialization(
                "coeff must be [re_num, re_den, im_num, im_den]".into(),
            ));
        }
        let nums: Vec<i64> = coeff
            .iter()
            .map(|x| {
                x.as_i64()
                    .ok_or_else(|| AlgebraError::Serialization("non-integer coeff entry".into()))
            })
            .collect::<Result<_, _>>()?;
        if nums[1] == 0 || nums[3] == 0 {
            return Err(AlgebraError::Serialization("zero denominator".into()));
        }
        let c = GaussRat::from_big(
            BigRational::new(BigInt::from(nums[0]), BigInt::from(nums[1])),
            BigRational::new(BigInt::from(nums[2]), BigInt::from(nums[3])),
        );
        let mut m = Monomial::unit();
        if let Some(scalars) = mono.get("scalars").and_then(|s| s.as_object()) {
            for (name, e) in scalars {
                let sym = ScalarSymbol::from_name(name).ok_or_else(|| {
                    AlgebraError::Serialization(format!("unknown scalar {}", name))
                })?;
                let exp = e
                    .as_u64()
                    .ok_or_else(|| AlgebraError::Serialization("bad exponent".into()))?;
                m.scalars[sym.index()] = exp as u16;
            }
        }
        let mut atom_counts: std::collections::BTreeMap<FieldAtom, u16> = Default::default();
        if let Some(atoms) = mono.get("atoms").and_then(|a| a.as_array()) {
            for a in atoms {
                let field = a
                    .get("field")
                    .and_then(|f| f.as_str())
                    .and_then(Field::from_name)
                    .ok_or_else(|| AlgebraError::Serialization("bad atom field".into()))?;
                let d = a.get("d").and_then(|x| x.as_u64()).unwrap_or(0) as u16;
                let dbar = a.get("dbar").and_then(|x| x.as_u64()).unwrap_or(0) as u16;
                *atom_counts
                    .entry(FieldAtom::new(field, d, dbar))
                    .or_insert(0) += 1;
            }
        }
        m.atoms = atom_counts.into_iter().collect();
        p.add_term(m, c);
    }
    Ok(p)
}

/// `LinDiffOp` as an object keyed `"d,dbar"` in ascending key order.
pub fn lindiffop_to_json(op: &LinDiffOp) -> Result<Value, AlgebraError> {
    let mut obj = Map::new();
    for (&(d, dbar), c) in op.coeffs() {
        obj.insert(format!("{},{}", d, dbar), funcpoly_to_json(c)?);
    }
    Ok(Value::Object(obj))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potential::z_poly;

    #[test]
    fn roundtrip() {
        let z2 = z_poly(2).unwrap();
        let v = funcpoly_to_json(&z2).unwrap();
        let back = funcpoly_from_json(&v).unwrap();
        assert_eq!(back, z2);
    }

    #[test]
    fn random_roundtrip() {
        use crate::coeff::GaussRat;
        use crate::poly::{Field, FieldAtom, Monomial};
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed_5e71);
        for _ in 0..25 {
            let mut p = FuncPoly::zero();
            for _ in 0..rng.gen_range(1..6) {
                let c = GaussRat::from_big(
                    num::BigRational::new(
                        num::BigInt::from(rng.gen_range(-40i64..40)),
                        num::BigInt::from(rng.gen_range(1i64..7)),
                    ),
                    num::BigRational::new(
                        num::BigInt::from(rng.gen_range(-5i64..5)),
                        num::BigInt::from(rng.gen_range(1i64..4)),
                    ),
                );
                let field = [Field::B, Field::V, Field::U][rng.gen_range(0..3)];
                let mut m = Monomial::atom(FieldAtom::new(
                    field,
                    rng.gen_range(0..3),
                    rng.gen_range(0..3),
                ));
                m.scalars[rng.gen_range(0..crate::poly::SCALAR_COUNT)] = rng.gen_range(0..3);
                p.add_term(m, c);
            }
            let back = funcpoly_from_json(&funcpoly_to_json(&p).unwrap()).unwrap();
            assert_eq!(back, p);
        }
    }

    #[test]
    fn stable_bytes() {
        let z2 = z_poly(2).unwrap();
        let a = serde_json::to_string(&funcpoly_to_json(&z2).unwrap()).unwrap();
        let b = serde_json::to_string(&funcpoly_to_json(&z2).unwrap()).unwrap();
        assert_eq!(a, b);
    }
}

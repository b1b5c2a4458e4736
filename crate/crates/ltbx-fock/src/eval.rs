//! Numeric evaluation of symbolic polynomials against a concrete field
//! specification: every field atom `∂^d∂̄^dbar f` becomes the closed-form
//! derivative of the bump sum, every scalar symbol a bound number.

use crate::bump::DerivTable;
use crate::error::FockError;
use crate::field::FieldSpec;
use ltbx_algebra::poly::{Field, FieldAtom, FuncPoly, ScalarSymbol};
use num_complex::Complex64;
use std::collections::BTreeMap;

pub type ScalarBindings = BTreeMap<ScalarSymbol, f64>;

/// Precompiled evaluator for a fixed polynomial over a fixed spec; matrix
/// assembly reuses it across grid points.
pub struct FieldEvaluator<'a> {
    spec: &'a FieldSpec,
    poly: &'a FuncPoly,
    /// scalar^exponent factors folded per monomial, aligned with `monomials`
    scalar_factors: Vec<f64>,
    monomials: Vec<Vec<(usize, u16)>>, // (atom index, exponent)
    coeffs: Vec<Complex64>,
    atom_tables: Vec<(Field, DerivTable)>,
}

impl<'a> FieldEvaluator<'a> {
    pub fn new(
        poly: &'a FuncPoly,
        spec: &'a FieldSpec,
        bindings: &ScalarBindings,
    ) -> Result<Self, FockError> {
        for sym in poly.scalars_used() {
            if !bindings.contains_key(&sym) {
                return Err(FockError::UnboundScalar(sym.name().to_string()));
            }
        }
        let atoms = poly.atoms();
        for a in &atoms {
            let order = a.d as u32 + a.dbar as u32;
            let terms = match a.field {
                Field::B => &spec.b_terms,
                Field::V => &spec.v_terms,
                Field::U => return Err(FockError::FormalFieldInEval),
            };
            for bump in terms {
                if order > bump.k.saturating_sub(1) {
                    return Err(FockError::SmoothnessExceeded {
                        field: a.field.name().to_string(),
                        needed: order,
                        available: bump.k.saturating_sub(1),
                    });
                }
            }
        }
        let atom_index: BTreeMap<FieldAtom, usize> =
            atoms.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        let atom_tables = atoms
            .iter()
            .map(|a| (a.field, DerivTable::new(a.d, a.dbar)))
            .collect();

        let mut scalar_factors = Vec::new();
        let mut monomials = Vec::new();
        let mut coeffs = Vec::new();
        for (m, c) in poly.terms() {
            let mut sf = 1.0f64;
            for (i, &e) in m.scalars.iter().enumerate() {
                if e > 0 {
                    let sym = ltbx_algebra::poly::ALL_SCALARS[i];
                    sf *= bindings[&sym].powi(e as i32);
                }
            }
            scalar_factors.push(sf);
            monomials.push(
                m.atoms
                    .iter()
                    .map(|&(a, e)| (atom_index[&a], e))
                    .collect::<Vec<_>>(),
            );
            let (re, im) = c.to_f64_pair();
            coeffs.push(Complex64::new(re, im));
        }
        Ok(FieldEvaluator {
            spec,
            poly,
            scalar_factors,
            monomials,
            coeffs,
            atom_tables,
        })
    }

    pub fn poly(&self) -> &FuncPoly {
        self.poly
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut atom_values = Vec::with_capacity(self.atom_tables.len());
        for (field, table) in &self.atom_tables {
            let terms = match field {
                Field::B => &self.spec.b_terms,
                Field::V => &self.spec.v_terms,
                Field::U => unreachable!(),
            };
            let mut v = Complex64::new(0.0, 0.0);
            for bump in terms {
                v += bump.eval_deriv(table, z);
            }
            atom_values.push(v);
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for ((factors, coeff), sf) in self
            .monomials
            .iter()
            .zip(&self.coeffs)
            .zip(&self.scalar_factors)
        {
            let mut term = coeff * sf;
            for &(idx, e) in factors {
                term *= atom_values[idx].powu(e as u32);
            }
            acc += term;
        }
        acc
    }
}

/// One-shot evaluation. Errors: unbound scalar; derivative order exceeding a
/// bump's smoothness (a mis-specified spec for the requested level).
pub fn eval_funcpoly(
    p: &FuncPoly,
    spec: &FieldSpec,
    z: Complex64,
    bindings: &ScalarBindings,
) -> Result<Complex64, FockError> {
    Ok(FieldEvaluator::new(p, spec, bindings)?.eval(z))
}

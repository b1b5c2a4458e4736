//! Linear differential operators in `U` extracted from vacuum forms.
//!
//! The vacuum form of `Q^q·U·Q̄^q` is linear in the formal field `U` and its
//! derivatives; collecting by the `U`-atom turns it into a map
//! `(d, dbar) ↦ coefficient`, i.e. the operator `U ↦ Σ c_{d,dbar} ∂^d∂̄^dbar U`
//! with coefficients polynomial in `b`, its derivatives and `B°`.

use crate::coeff::GaussRat;
use crate::error::AlgebraError;
use crate::poly::{Field, FieldAtom, FuncPoly, Monomial};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Default)]
pub struct LinDiffOp {
    coeffs: BTreeMap<(u16, u16), FuncPoly>,
}

impl LinDiffOp {
    pub fn new() -> Self {
        LinDiffOp {
            coeffs: BTreeMap::new(),
        }
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (&(u16, u16), &FuncPoly)> {
        self.coeffs.iter()
    }

    pub fn coeff(&self, d: u16, dbar: u16) -> FuncPoly {
        self.coeffs
            .get(&(d, dbar))
            .cloned()
            .unwrap_or_else(FuncPoly::zero)
    }

    /// `max(d + dbar)` over the support; 0 for the zero operator.
    pub fn order(&self) -> u32 {
        self.coeffs
            .keys()
            .map(|&(d, dbar)| d as u32 + dbar as u32)
            .max()
            .unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn insert(&mut self, key: (u16, u16), f: FuncPoly) {
        if f.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.coeffs.entry(key) {
            Entry::Vacant(v) => {
                v.insert(f);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + &f;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    /// Collect a polynomial that is linear in `U` into operator form. Every
    /// monomial must contain exactly one `U`-atom to the first power.
    pub fn from_linear_in_u(p: &FuncPoly) -> Result<LinDiffOp, AlgebraError> {
        let mut op = LinDiffOp::new();
        for (m, c) in p.terms() {
            let u_entries: Vec<(FieldAtom, u16)> = m
                .atoms
                .iter()
                .copied()
                .filter(|(a, _)| a.field == Field::U)
                .collect();
            let degree: u32 = u_entries.iter().map(|&(_, e)| e as u32).sum();
            if degree != 1 {
                return Err(AlgebraError::NotLinearInU {
                    monomial: format!("{}", FuncPoly::atom_monomial_display(m, c)),
                    degree,
                });
            }
            let u_atom = u_entries[0].0;
            let rest = Monomial {
                scalars: m.scalars,
                atoms: m
                    .atoms
                    .iter()
                    .copied()
                    .filter(|(a, _)| a.field != Field::U)
                    .collect(),
            };
            let mut coeff = FuncPoly::zero();
            coeff.add_term(rest, c.clone());
            op.insert((u_atom.d, u_atom.dbar), coeff);
        }
        Ok(op)
    }

    /// Apply to a concrete argument: `Σ c_{d,dbar} · ∂^d ∂̄^dbar g` with
    /// exact Leibniz differentiation of `g`.
    pub fn apply(&self, g: &FuncPoly) -> FuncPoly {
        let mut out = FuncPoly::zero();
        // cache iterated derivatives ∂^d g, then ∂̄ passes on top
        let dmax = self.coeffs.keys().map(|&(d, _)| d).max().unwrap_or(0);
        let mut d_pows: Vec<FuncPoly> = Vec::with_capacity(dmax as usize + 1);
        d_pows.push(g.clone());
        for d in 0..dmax {
            let next = d_pows[d as usize].d();
            d_pows.push(next);
        }
        for (&(d, dbar), c) in &self.coeffs {
            let mut deriv = d_pows[d as usize].clone();
            for _ in 0..dbar {
                deriv = deriv.dbar();
            }
            out = &out + &(c * &deriv);
        }
        out
    }

    /// Evaluate at a constant argument `U = const`: only the `(0,0)`
    /// coefficient survives.
    pub fn at_unit(&self) -> FuncPoly {
        self.coeff(0, 0)
    }

    pub fn add(&self, rhs: &LinDiffOp) -> LinDiffOp {
        let mut out = self.clone();
        for (k, f) in &rhs.coeffs {
            out.insert(*k, f.clone());
        }
        out
    }

    pub fn scale(&self, c: &GaussRat) -> LinDiffOp {
        let mut out = LinDiffOp::new();
        for (k, f) in &self.coeffs {
            out.insert(*k, f.scale(c));
        }
        out
    }
}

impl FuncPoly {
    fn atom_monomial_display(m: &Monomial, c: &GaussRat) -> FuncPoly {
        let mut p = FuncPoly::zero();
        p.add_term(m.clone(), c.clone());
        p
    }
}

impl fmt::Display for LinDiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(d, dbar), c) in &self.coeffs {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "[{} ] ∂^{}∂̄^{} U", c, d, dbar)?;
        }
        Ok(())
    }
}

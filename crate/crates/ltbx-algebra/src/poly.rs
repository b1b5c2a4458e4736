//! Multivariate polynomials in field derivatives and scalar symbols over the
//! Gaussian rationals.
//!
//! A [`FuncPoly`] is a canonical sum of [`Monomial`]s. Each monomial is a
//! product of a coefficient, powers of the six scalar symbols, and powers of
//! field atoms `∂^d ∂̄^dbar f` for `f ∈ {b, V, U}`. Canonical form: atoms and
//! scalars in a fixed total order, like terms merged, zero coefficients
//! dropped. Two polynomials are equal iff their canonical forms are identical.
//!
//! Wirtinger convention: `∂ = (∂₁ − i∂₂)/2`, `∂̄ = (∂₁ + i∂₂)/2`, so
//! `Δ = 4∂∂̄` and `Δ^k f` is the atom with `d = dbar = k` and coefficient
//! `4^k`. Conjugation swaps `d ↔ dbar` on every atom (the fields are
//! real-valued) and conjugates coefficients.

use crate::coeff::GaussRat;
use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::Zero;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Formal commuting scalar indeterminates of the model.
///
/// `B0` is the background field B°; the rest appear in the spectral-window
/// bookkeeping of the splitting analysis. Only `B0` carries weight.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub enum ScalarSymbol {
    /// Background magnetic field B°.
    B0,
    /// Window midpoint μ (μ₊ or μ₋ depending on the chosen sign).
    Mu,
    /// Window half-length τ.
    Tau,
    /// Distance-to-level parameter λ.
    Lambda,
    /// Landau level Λ = 2qB°.
    CapLambda,
    /// Window endpoint s (s₊ or s₋ depending on the chosen sign).
    S,
}

pub const SCALAR_COUNT: usize = 6;

pub const ALL_SCALARS: [ScalarSymbol; SCALAR_COUNT] = [
    ScalarSymbol::B0,
    ScalarSymbol::Mu,
    ScalarSymbol::Tau,
    ScalarSymbol::Lambda,
    ScalarSymbol::CapLambda,
    ScalarSymbol::S,
];

impl ScalarSymbol {
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            ScalarSymbol::B0 => "B0",
            ScalarSymbol::Mu => "mu",
            ScalarSymbol::Tau => "tau",
            ScalarSymbol::Lambda => "lambda",
            ScalarSymbol::CapLambda => "Lambda",
            ScalarSymbol::S => "s",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        ALL_SCALARS.iter().copied().find(|s| s.name() == name)
    }
}

/// The three formal fields: the magnetic perturbation `b`, the electric
/// potential `V`, and the generic argument `U` of the linear differential
/// operators.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub enum Field {
    B,
    V,
    U,
}

impl Field {
    pub fn name(self) -> &'static str {
        match self {
            Field::B => "b",
            Field::V => "V",
            Field::U => "U",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "b" => Some(Field::B),
            "V" => Some(Field::V),
            "U" => Some(Field::U),
            _ => None,
        }
    }
}

/// `∂^d ∂̄^dbar` applied to a field. Weight is `2 + d + dbar`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct FieldAtom {
    pub field: Field,
    pub d: u16,
    pub dbar: u16,
}

impl FieldAtom {
    pub fn new(field: Field, d: u16, dbar: u16) -> Self {
        FieldAtom { field, d, dbar }
    }

    pub fn weight(&self) -> u32 {
        2 + self.d as u32 + self.dbar as u32
    }

    pub fn conj(&self) -> Self {
        FieldAtom {
            field: self.field,
            d: self.dbar,
            dbar: self.d,
        }
    }
}

/// Canonical monomial: scalar exponents in fixed symbol order, atoms sorted
/// by `(field, d, dbar)` with positive multiplicities.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct Monomial {
    pub scalars: [u16; SCALAR_COUNT],
    pub atoms: Vec<(FieldAtom, u16)>,
}

impl Monomial {
    pub fn unit() -> Self {
        Monomial {
            scalars: [0; SCALAR_COUNT],
            atoms: Vec::new(),
        }
    }

    pub fn scalar(sym: ScalarSymbol) -> Self {
        let mut m = Monomial::unit();
        m.scalars[sym.index()] = 1;
        m
    }

    pub fn atom(atom: FieldAtom) -> Self {
        Monomial {
            scalars: [0; SCALAR_COUNT],
            atoms: vec![(atom, 1)],
        }
    }

    pub fn is_unit(&self) -> bool {
        self.scalars.iter().all(|&e| e == 0) && self.atoms.is_empty()
    }

    pub fn is_scalar_only(&self) -> bool {
        self.atoms.is_empty()
    }

    /// Product of two monomials: exponents add.
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut scalars = self.scalars;
        for (i, e) in other.scalars.iter().enumerate() {
            scalars[i] += e;
        }
        let mut atoms: BTreeMap<FieldAtom, u16> = self.atoms.iter().copied().collect();
        for &(a, e) in &other.atoms {
            *atoms.entry(a).or_insert(0) += e;
        }
        Monomial {
            scalars,
            atoms: atoms.into_iter().collect(),
        }
    }

    /// The model's weight grading: weight 2 per `B°`, `2 + d + dbar` per field
    /// atom power; the window scalars μ, τ, λ, Λ, s carry no weight.
    pub fn weight(&self) -> u32 {
        let mut w = 2 * self.scalars[ScalarSymbol::B0.index()] as u32;
        for &(a, e) in &self.atoms {
            w += a.weight() * e as u32;
        }
        w
    }

    /// Net rotational phase `Σ exp·(dbar − d)`; zero for all monomials of a
    /// rotation-covariant expression, which is what the radial fast paths
    /// downstream rely on.
    pub fn phase(&self) -> i32 {
        self.atoms
            .iter()
            .map(|&(a, e)| (a.dbar as i32 - a.d as i32) * e as i32)
            .sum()
    }

    fn conj(&self) -> Monomial {
        let mut atoms: Vec<(FieldAtom, u16)> =
            self.atoms.iter().map(|&(a, e)| (a.conj(), e)).collect();
        atoms.sort();
        Monomial {
            scalars: self.scalars,
            atoms,
        }
    }
}

/// Canonical sum of monomials with Gaussian-rational coefficients.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct FuncPoly {
    terms: BTreeMap<Monomial, GaussRat>,
}

impl FuncPoly {
    pub fn zero() -> Self {
        FuncPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        FuncPoly::constant(GaussRat::one())
    }

    pub fn constant(c: GaussRat) -> Self {
        let mut p = FuncPoly::zero();
        p.add_term(Monomial::unit(), c);
        p
    }

    pub fn from_int(n: i64) -> Self {
        FuncPoly::constant(GaussRat::from_int(n))
    }

    pub fn scalar(sym: ScalarSymbol) -> Self {
        let mut p = FuncPoly::zero();
        p.add_term(Monomial::scalar(sym), GaussRat::one());
        p
    }

    /// The bare field `f` (no derivatives).
    pub fn field(f: Field) -> Self {
        FuncPoly::atom(FieldAtom::new(f, 0, 0))
    }

    pub fn atom(a: FieldAtom) -> Self {
        let mut p = FuncPoly::zero();
        p.add_term(Monomial::atom(a), GaussRat::one());
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: GaussRat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussRat)> {
        self.terms.iter()
    }

    pub fn coeff_of(&self, m: &Monomial) -> GaussRat {
        self.terms.get(m).cloned().unwrap_or_else(GaussRat::zero)
    }

    /// Coefficient of the unit monomial (the true constant, no `B°` powers).
    pub fn unit_coeff(&self) -> GaussRat {
        self.coeff_of(&Monomial::unit())
    }

    pub fn scale(&self, c: &GaussRat) -> FuncPoly {
        if c.is_zero() {
            return FuncPoly::zero();
        }
        let mut out = FuncPoly::zero();
        for (m, a) in &self.terms {
            out.add_term(m.clone(), a * c);
        }
        out
    }

    pub fn scale_int(&self, n: i64) -> FuncPoly {
        self.scale(&GaussRat::from_int(n))
    }

    pub fn pow(&self, n: u32) -> FuncPoly {
        let mut out = FuncPoly::one();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Wirtinger `∂`, term by term via the Leibniz rule. Scalars are
    /// constants; only field atoms are differentiated.
    pub fn d(&self) -> FuncPoly {
        self.differentiate(true)
    }

    /// Wirtinger `∂̄`.
    pub fn dbar(&self) -> FuncPoly {
        self.differentiate(false)
    }

    fn differentiate(&self, holomorphic: bool) -> FuncPoly {
        let mut out = FuncPoly::zero();
        for (m, c) in &self.terms {
            for (i, &(a, e)) in m.atoms.iter().enumerate() {
                let bumped = if holomorphic {
                    FieldAtom::new(a.field, a.d + 1, a.dbar)
                } else {
                    FieldAtom::new(a.field, a.d, a.dbar + 1)
                };
                let mut atoms: BTreeMap<FieldAtom, u16> = m.atoms.iter().copied().collect();
                if e == 1 {
                    atoms.remove(&a);
                } else {
                    atoms.insert(a, e - 1);
                }
                *atoms.entry(bumped).or_insert(0) += 1;
                let mono = Monomial {
                    scalars: m.scalars,
                    atoms: atoms.into_iter().collect(),
                };
                let factor = GaussRat::from_int(m.atoms[i].1 as i64);
                out.add_term(mono, c * &factor);
            }
        }
        out
    }

    /// `Δ = 4 ∂∂̄`.
    pub fn laplacian(&self) -> FuncPoly {
        self.d().dbar().scale_int(4)
    }

    /// Complex conjugate: swaps `d ↔ dbar` on every atom and conjugates
    /// coefficients (fields and scalars are real).
    pub fn conj(&self) -> FuncPoly {
        let mut out = FuncPoly::zero();
        for (m, c) in &self.terms {
            out.add_term(m.conj(), c.conj());
        }
        out
    }

    pub fn re(&self) -> FuncPoly {
        (self + &self.conj()).scale(&GaussRat::from_ratio(1, 2))
    }

    pub fn im(&self) -> FuncPoly {
        // (p - conj p) / (2i) = -(i/2)(p - conj p)
        let diff = self - &self.conj();
        let half_neg_i = GaussRat::from_big(
            BigRational::zero(),
            BigRational::new(BigInt::from(-1), BigInt::from(2)),
        );
        diff.scale(&half_neg_i)
    }

    pub fn is_real(&self) -> bool {
        *self == self.conj()
    }

    /// Sum of the field-free monomials (pure polynomial in the scalars).
    pub fn scalar_part(&self) -> FuncPoly {
        let mut out = FuncPoly::zero();
        for (m, c) in &self.terms {
            if m.is_scalar_only() {
                out.add_term(m.clone(), c.clone());
            }
        }
        out
    }

    /// Complement of [`scalar_part`](Self::scalar_part).
    pub fn field_part(&self) -> FuncPoly {
        let mut out = FuncPoly::zero();
        for (m, c) in &self.terms {
            if !m.is_scalar_only() {
                out.add_term(m.clone(), c.clone());
            }
        }
        out
    }

    /// Replace every occurrence of `sym` by the polynomial `value`
    /// (ring homomorphism).
    pub fn substitute_scalar(&self, sym: ScalarSymbol, value: &FuncPoly) -> FuncPoly {
        let idx = sym.index();
        let mut out = FuncPoly::zero();
        for (m, c) in &self.terms {
            let e = m.scalars[idx];
            let mut base = m.clone();
            base.scalars[idx] = 0;
            if e == 0 {
                out.add_term(base, c.clone());
                continue;
            }
            let mut rest = FuncPoly::zero();
            rest.add_term(base, c.clone());
            out = &out + &(&rest * &value.pow(e as u32));
        }
        out
    }

    /// Every distinct atom occurring in the polynomial.
    pub fn atoms(&self) -> Vec<FieldAtom> {
        let mut set = std::collections::BTreeSet::new();
        for m in self.terms.keys() {
            for &(a, _) in &m.atoms {
                set.insert(a);
            }
        }
        set.into_iter().collect()
    }

    /// Scalar symbols with nonzero exponent somewhere.
    pub fn scalars_used(&self) -> Vec<ScalarSymbol> {
        let mut used = [false; SCALAR_COUNT];
        for m in self.terms.keys() {
            for (i, &e) in m.scalars.iter().enumerate() {
                if e > 0 {
                    used[i] = true;
                }
            }
        }
        ALL_SCALARS
            .iter()
            .copied()
            .filter(|s| used[s.index()])
            .collect()
    }

    /// True iff every monomial has the given weight (the zero polynomial is
    /// homogeneous of any weight).
    pub fn is_weight_homogeneous(&self, w: u32) -> bool {
        self.terms.keys().all(|m| m.weight() == w)
    }

    /// True iff every monomial is rotation-phase balanced.
    pub fn is_phase_balanced(&self) -> bool {
        self.terms.keys().all(|m| m.phase() == 0)
    }
}

impl Add for &FuncPoly {
    type Output = FuncPoly;
    fn add(self, rhs: &FuncPoly) -> FuncPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &FuncPoly {
    type Output = FuncPoly;
    fn sub(self, rhs: &FuncPoly) -> FuncPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.neg());
        }
        out
    }
}

impl Mul for &FuncPoly {
    type Output = FuncPoly;
    fn mul(self, rhs: &FuncPoly) -> FuncPoly {
        let mut out = FuncPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &FuncPoly {
    type Output = FuncPoly;
    fn neg(self) -> FuncPoly {
        let mut out = FuncPoly::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.neg());
        }
        out
    }
}

impl fmt::Display for FuncPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}", c)?;
            for (i, &e) in m.scalars.iter().enumerate() {
                if e > 0 {
                    write!(f, "*{}", ALL_SCALARS[i].name())?;
                    if e > 1 {
                        write!(f, "^{}", e)?;
                    }
                }
            }
            for &(a, e) in &m.atoms {
                if a.d == 0 && a.dbar == 0 {
                    write!(f, "*{}", a.field.name())?;
                } else {
                    write!(f, "*{}[{},{}]", a.field.name(), a.d, a.dbar)?;
                }
                if e > 1 {
                    write!(f, "^{}", e)?;
                }
            }
        }
        Ok(())
    }
}

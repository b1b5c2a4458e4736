//! Formal words and sums over the alphabet `{Q, Q̄, function factor}` and
//! their normal ordering.
//!
//! Rewrite rules of the algebra:
//!
//! ```text
//!   Q·Q̄      →  Q̄·Q + (2B° + 2b)          (commutator [Q, Q̄] = 2B)
//!   Q·f      →  f·Q + (−2i ∂̄f)            ([Q, h] = −2i ∂̄h)
//!   f·Q̄      →  Q̄·f + (2i ∂f)             ([Q̄, h] = −2i ∂h)
//! ```
//!
//! An expression is in normal form when every word reads `Q̄^a · f · Q^c`.
//! Rewriting terminates: with the measure µ = (letter count, Σ over `Q` of
//! non-`Q` letters to its right + Σ over `Q̄` of non-`Q̄` letters to its
//! left), every commutator branch shortens the word and every swap branch
//! keeps the length while lowering the inversion sum by one, so µ drops
//! lexicographically at each step. The result is independent of the order
//! in which redexes are contracted; the tests check this by running a
//! randomized-order small-step reducer against the structured reducer used
//! in production.

use crate::coeff::GaussRat;
use crate::poly::{Field, FuncPoly, ScalarSymbol};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// One letter of an operator word.
#[derive(Clone, PartialEq, Debug)]
pub enum OpLetter {
    Q,
    Qbar,
    Func(FuncPoly),
}

/// A product of letters. Canonical shape: no two adjacent `Func` letters and
/// no zero `Func` letter (the constructor merges and detects zero).
#[derive(Clone, PartialEq, Debug)]
pub struct OpWord {
    letters: Vec<OpLetter>,
}

impl OpWord {
    /// Build a word, merging adjacent function factors. Returns `None` when
    /// a factor is zero (the whole word vanishes).
    pub fn new(letters: Vec<OpLetter>) -> Option<OpWord> {
        let mut merged: Vec<OpLetter> = Vec::with_capacity(letters.len());
        for l in letters {
            match (merged.last_mut(), l) {
                (Some(OpLetter::Func(prev)), OpLetter::Func(f)) => {
                    let prod = &*prev * &f;
                    *prev = prod;
                }
                (_, l) => merged.push(l),
            }
        }
        if merged.iter().any(|l| match l {
            OpLetter::Func(f) => f.is_zero(),
            _ => false,
        }) {
            return None;
        }
        Some(OpWord { letters: merged })
    }

    /// The identity word.
    pub fn unit() -> OpWord {
        OpWord { letters: vec![] }
    }

    pub fn letters(&self) -> &[OpLetter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

/// A finite sum of operator words.
#[derive(Clone, Debug, Default)]
pub struct OpExpr {
    words: Vec<OpWord>,
}

impl OpExpr {
    pub fn zero() -> OpExpr {
        OpExpr { words: vec![] }
    }

    pub fn one() -> OpExpr {
        OpExpr {
            words: vec![OpWord::unit()],
        }
    }

    pub fn from_word(w: OpWord) -> OpExpr {
        OpExpr { words: vec![w] }
    }

    pub fn from_letters(letters: Vec<OpLetter>) -> OpExpr {
        match OpWord::new(letters) {
            Some(w) => OpExpr::from_word(w),
            None => OpExpr::zero(),
        }
    }

    pub fn q() -> OpExpr {
        OpExpr::from_letters(vec![OpLetter::Q])
    }

    pub fn qbar() -> OpExpr {
        OpExpr::from_letters(vec![OpLetter::Qbar])
    }

    pub fn func(f: FuncPoly) -> OpExpr {
        OpExpr::from_letters(vec![OpLetter::Func(f)])
    }

    /// `Q^n` as a single word.
    pub fn q_pow(n: u16) -> OpExpr {
        OpExpr::from_letters(vec![OpLetter::Q; n as usize])
    }

    /// `Q̄^n` as a single word.
    pub fn qbar_pow(n: u16) -> OpExpr {
        OpExpr::from_letters(vec![OpLetter::Qbar; n as usize])
    }

    pub fn words(&self) -> &[OpWord] {
        &self.words
    }

    pub fn add(&self, rhs: &OpExpr) -> OpExpr {
        let mut words = self.words.clone();
        words.extend(rhs.words.iter().cloned());
        OpExpr { words }
    }

    pub fn mul(&self, rhs: &OpExpr) -> OpExpr {
        let mut words = Vec::new();
        for a in &self.words {
            for b in &rhs.words {
                let mut letters = a.letters.clone();
                letters.extend(b.letters.iter().cloned());
                if let Some(w) = OpWord::new(letters) {
                    words.push(w);
                }
            }
        }
        OpExpr { words }
    }

    pub fn scale(&self, c: &GaussRat) -> OpExpr {
        self.mul_left_func(&FuncPoly::constant(c.clone()))
    }

    fn mul_left_func(&self, f: &FuncPoly) -> OpExpr {
        OpExpr::func(f.clone()).mul(self)
    }

    /// Formal adjoint: reverse each word, swap `Q ↔ Q̄`, conjugate every
    /// function factor.
    pub fn adjoint(&self) -> OpExpr {
        let words = self
            .words
            .iter()
            .filter_map(|w| {
                let letters = w
                    .letters
                    .iter()
                    .rev()
                    .map(|l| match l {
                        OpLetter::Q => OpLetter::Qbar,
                        OpLetter::Qbar => OpLetter::Q,
                        OpLetter::Func(f) => OpLetter::Func(f.conj()),
                    })
                    .collect();
                OpWord::new(letters)
            })
            .collect();
        OpExpr { words }
    }

    /// Normal-order with the structured reducer and return the canonical
    /// normal form.
    pub fn normal_form(&self) -> NormalForm {
        let mut nf = NormalForm::new();
        for w in &self.words {
            nf.absorb(normal_order_word(w));
        }
        nf
    }

    /// Normal-order and return an equal expression whose words all read
    /// `Q̄^a · f · Q^c`, sorted by `(a, c)`.
    pub fn normal_order(&self) -> OpExpr {
        self.normal_form().to_expr()
    }

    /// The vacuum form: normal-order, then keep only the pure-function part.
    /// This is the function `F` with `(e·u, u) = (F·u, u)` for zero modes
    /// `u`, because every word still containing a `Q` kills `u` on the right
    /// and every word with a leading `Q̄` kills it on the left.
    pub fn vacuum_form(&self) -> FuncPoly {
        self.normal_form().func_part()
    }
}

impl fmt::Display for OpExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.words.is_empty() {
            return write!(f, "0");
        }
        for (i, w) in self.words.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if w.is_empty() {
                write!(f, "1")?;
            }
            for (j, l) in w.letters.iter().enumerate() {
                if j > 0 {
                    write!(f, "·")?;
                }
                match l {
                    OpLetter::Q => write!(f, "Q")?,
                    OpLetter::Qbar => write!(f, "Q̄")?,
                    OpLetter::Func(p) => write!(f, "({})", p)?,
                }
            }
        }
        Ok(())
    }
}

/// `2B = 2B° + 2b`, the commutator value of `[Q, Q̄]`.
pub fn two_b() -> FuncPoly {
    &FuncPoly::scalar(ScalarSymbol::B0).scale_int(2) + &FuncPoly::field(Field::B).scale_int(2)
}

/// Canonical normal form: `(a, c) ↦ f` representing `Σ Q̄^a · f · Q^c`.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct NormalForm {
    entries: BTreeMap<(u16, u16), FuncPoly>,
}

impl NormalForm {
    pub fn new() -> Self {
        NormalForm {
            entries: BTreeMap::new(),
        }
    }

    pub fn add(&mut self, key: (u16, u16), f: FuncPoly) {
        if f.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.entries.entry(key) {
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

    pub fn absorb(&mut self, other: NormalForm) {
        for (k, f) in other.entries {
            self.add(k, f);
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(u16, u16), &FuncPoly)> {
        self.entries.iter()
    }

    /// The `(0,0)` entry: the pure function summand.
    pub fn func_part(&self) -> FuncPoly {
        self.entries
            .get(&(0, 0))
            .cloned()
            .unwrap_or_else(FuncPoly::zero)
    }

    pub fn to_expr(&self) -> OpExpr {
        let mut words = Vec::new();
        for (&(a, c), f) in &self.entries {
            let mut letters = vec![OpLetter::Qbar; a as usize];
            letters.push(OpLetter::Func(f.clone()));
            letters.extend(vec![OpLetter::Q; c as usize]);
            if let Some(w) = OpWord::new(letters) {
                words.push(w);
            }
        }
        OpExpr { words }
    }
}

fn binom(n: u16, k: u16) -> GaussRat {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= BigInt::from((n - i) as u64);
        den *= BigInt::from((i + 1) as u64);
    }
    GaussRat::from_big(BigRational::new(num, den), BigRational::zero())
}

/// `(2i∂)^j g` for j = 0..=jmax.
fn iterated_two_i_d(g: &FuncPoly, jmax: u16) -> Vec<FuncPoly> {
    let two_i = GaussRat::from_parts(0, 2);
    let mut out = Vec::with_capacity(jmax as usize + 1);
    out.push(g.clone());
    for j in 0..jmax {
        let next = out[j as usize].d().scale(&two_i);
        out.push(next);
    }
    out
}

/// Structured reducer: scan the word right-to-left, maintaining the normal
/// form of the processed suffix, and multiply one letter at a time on the
/// left using the closed-form commutation identities
///
/// ```text
///   g·Q̄^a  = Σ_j C(a,j) Q̄^{a−j} ((2i∂)^j g)
///   Q·Q̄^a  = Q̄^a Q + Σ_i C(a,i+1) Q̄^{a−1−i} ((2i∂)^i (2B))
/// ```
///
/// both of which follow from the one-step rules by induction.
fn normal_order_word(w: &OpWord) -> NormalForm {
    let mut nf = NormalForm::new();
    nf.add((0, 0), FuncPoly::one());
    for letter in w.letters.iter().rev() {
        nf = left_mul(letter, &nf);
    }
    nf
}

fn left_mul(letter: &OpLetter, nf: &NormalForm) -> NormalForm {
    let mut out = NormalForm::new();
    match letter {
        OpLetter::Qbar => {
            for (&(a, c), f) in nf.entries() {
                out.add((a + 1, c), f.clone());
            }
        }
        OpLetter::Func(g) => {
            let amax = nf.entries().map(|(&(a, _), _)| a).max().unwrap_or(0);
            let pows = iterated_two_i_d(g, amax);
            for (&(a, c), f) in nf.entries() {
                for j in 0..=a {
                    let coeff = binom(a, j);
                    out.add((a - j, c), (&pows[j as usize] * f).scale(&coeff));
                }
            }
        }
        OpLetter::Q => {
            let amax = nf.entries().map(|(&(a, _), _)| a).max().unwrap_or(0);
            let comm_pows = iterated_two_i_d(&two_b(), amax.saturating_sub(1));
            let neg_two_i = GaussRat::from_parts(0, -2);
            for (&(a, c), f) in nf.entries() {
                // Q̄^a (f·Q) Q^c and Q̄^a (−2i ∂̄f) Q^c
                out.add((a, c + 1), f.clone());
                out.add((a, c), f.dbar().scale(&neg_two_i));
                // commutator tail from moving Q through Q̄^a
                for i in 0..a {
                    let coeff = binom(a, i + 1);
                    out.add((a - 1 - i, c), (&comm_pows[i as usize] * f).scale(&coeff));
                }
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Small-step rewriting engine; used by tests to confirm confluence and by the
// q ≤ 3 cross-checks as an independent second route to the same normal forms.
// ---------------------------------------------------------------------------

/// Position of a contractible adjacent pair in a word.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Redex(pub usize);

/// All redex positions of a word.
pub fn find_redexes(w: &OpWord) -> Vec<Redex> {
    let ls = w.letters();
    let mut out = Vec::new();
    for i in 0..ls.len().saturating_sub(1) {
        let contractible = matches!(
            (&ls[i], &ls[i + 1]),
            (OpLetter::Q, OpLetter::Qbar)
                | (OpLetter::Q, OpLetter::Func(_))
                | (OpLetter::Func(_), OpLetter::Qbar)
        );
        if contractible {
            out.push(Redex(i));
        }
    }
    out
}

/// Contract one redex, returning the replacement words.
pub fn apply_redex(w: &OpWord, r: Redex) -> Vec<OpWord> {
    let ls = w.letters();
    let i = r.0;
    let mut results = Vec::new();
    let mut rebuild = |mid: Vec<OpLetter>| {
        let mut letters = ls[..i].to_vec();
        letters.extend(mid);
        letters.extend(ls[i + 2..].iter().cloned());
        if let Some(nw) = OpWord::new(letters) {
            results.push(nw);
        }
    };
    match (&ls[i], &ls[i + 1]) {
        (OpLetter::Q, OpLetter::Qbar) => {
            rebuild(vec![OpLetter::Qbar, OpLetter::Q]);
            rebuild(vec![OpLetter::Func(two_b())]);
        }
        (OpLetter::Q, OpLetter::Func(f)) => {
            rebuild(vec![OpLetter::Func(f.clone()), OpLetter::Q]);
            rebuild(vec![OpLetter::Func(
                f.dbar().scale(&GaussRat::from_parts(0, -2)),
            )]);
        }
        (OpLetter::Func(f), OpLetter::Qbar) => {
            rebuild(vec![OpLetter::Qbar, OpLetter::Func(f.clone())]);
            rebuild(vec![OpLetter::Func(
                f.d().scale(&GaussRat::from_parts(0, 2)),
            )]);
        }
        _ => panic!("not a redex"),
    }
    results
}

/// Fully normal-order with a caller-chosen redex strategy. `choose(n)` picks
/// an index in `0..n` among the current word's redexes.
pub fn normal_order_smallstep(e: &OpExpr, mut choose: impl FnMut(usize) -> usize) -> NormalForm {
    let mut nf = NormalForm::new();
    let mut stack: Vec<OpWord> = e.words().to_vec();
    while let Some(w) = stack.pop() {
        let redexes = find_redexes(&w);
        if redexes.is_empty() {
            // word has shape Q̄^a f? Q^c
            let mut a = 0u16;
            let mut c = 0u16;
            let mut f = FuncPoly::one();
            for l in w.letters() {
                match l {
                    OpLetter::Qbar => a += 1,
                    OpLetter::Q => c += 1,
                    OpLetter::Func(g) => f = &f * g,
                }
            }
            nf.add((a, c), f);
        } else {
            let pick = redexes[choose(redexes.len())];
            stack.extend(apply_redex(&w, pick));
        }
    }
    nf
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::FieldAtom;

    fn b_poly() -> FuncPoly {
        FuncPoly::field(Field::B)
    }

    #[test]
    fn q_qbar_commutator() {
        // Q·Q̄ → Q̄·Q + 2B° + 2b
        let e = OpExpr::q().mul(&OpExpr::qbar());
        let nf = e.normal_form();
        let expected_pairs: Vec<((u16, u16), FuncPoly)> =
            vec![((0, 0), two_b()), ((1, 1), FuncPoly::one())];
        let got: Vec<_> = nf.entries().map(|(k, f)| (*k, f.clone())).collect();
        assert_eq!(got, expected_pairs);
    }

    #[test]
    fn q_through_function() {
        // Q·f → f·Q + (−2i ∂̄f), with f = b
        let e = OpExpr::q().mul(&OpExpr::func(b_poly()));
        let nf = e.normal_form();
        let db = FuncPoly::atom(FieldAtom::new(Field::B, 0, 1));
        assert_eq!(nf.func_part(), db.scale(&GaussRat::from_parts(0, -2)));
        assert_eq!(
            nf.entries()
                .find(|(k, _)| **k == (0, 1))
                .map(|(_, f)| f.clone()),
            Some(b_poly())
        );
    }

    #[test]
    fn already_normal_fixed_point() {
        let e = OpExpr::qbar().mul(&OpExpr::q());
        let nf = e.normal_order();
        assert_eq!(nf.words().len(), 1);
        let again = nf.normal_order();
        assert_eq!(nf.words(), again.words());
    }

    #[test]
    fn vacuum_q_qbar() {
        let e = OpExpr::q().mul(&OpExpr::qbar());
        assert_eq!(e.vacuum_form(), two_b());
    }

    #[test]
    fn vacuum_sandwich_dies() {
        // Q̄·f·Q has no pure-function part
        let e = OpExpr::qbar()
            .mul(&OpExpr::func(b_poly()))
            .mul(&OpExpr::q());
        assert!(e.vacuum_form().is_zero());
    }

    #[test]
    fn vacuum_q2_qbar2() {
        // Q²Q̄² → 2(2B°)² + 8b² + 16B°b + 2Δb. The linear coefficient is the
        // structure constant 2^q·q!·q = 16 at q = 2; cross-checked by the
        // recursion ‖Q̄²u‖² = ‖2Bu‖² + (2B·Q̄u, Q̄u) = 8B² + 2Δb.
        let e = OpExpr::q_pow(2).mul(&OpExpr::qbar_pow(2));
        let v = e.vacuum_form();
        let b0 = FuncPoly::scalar(ScalarSymbol::B0);
        let expected = &(&(&b0.pow(2).scale_int(8) + &b_poly().pow(2).scale_int(8))
            + &(&b0 * &b_poly()).scale_int(16))
            + &b_poly().laplacian().scale_int(2);
        assert_eq!(v, expected);
    }

    #[test]
    fn adjoint_swaps() {
        assert_eq!(OpExpr::q().adjoint().words(), OpExpr::qbar().words());
        // adjoint of Func(−2i ∂̄b) is Func(2i ∂b)
        let f = FuncPoly::atom(FieldAtom::new(Field::B, 0, 1)).scale(&GaussRat::from_parts(0, -2));
        let adj = OpExpr::func(f).adjoint();
        let expected =
            FuncPoly::atom(FieldAtom::new(Field::B, 1, 0)).scale(&GaussRat::from_parts(0, 2));
        match &adj.words()[0].letters()[0] {
            OpLetter::Func(g) => assert_eq!(*g, expected),
            _ => panic!("expected a function letter"),
        }
    }

    #[test]
    fn smallstep_matches_structured() {
        // leftmost strategy on a nontrivial sandwich
        let e = OpExpr::q_pow(2)
            .mul(&OpExpr::func(FuncPoly::field(Field::U)))
            .mul(&OpExpr::qbar_pow(2));
        let fast = e.normal_form();
        let slow = normal_order_smallstep(&e, |_| 0);
        let fast_map: Vec<_> = fast.entries().map(|(k, f)| (*k, f.clone())).collect();
        let slow_map: Vec<_> = slow.entries().map(|(k, f)| (*k, f.clone())).collect();
        assert_eq!(fast_map, slow_map);
    }
}

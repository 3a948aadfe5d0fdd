//! Morphisms of presented stable quadratic modules and homotopies between
//! them, with the 2-categorical operations: vertical composition and
//! whiskering on both sides.

use super::free::{SquadElement1, SquadError};
use super::presentation::SquadPresentation;
use crate::nil2::Nil2Word;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::sync::Arc;

/// Morphism determined by images of the E0 generators in degree 0 and of the
/// E1 generators in degree 1. The image of a formal ∂e1 symbol is forced to
/// be ∂ of the degree-1 image, so the boundary law holds on generators by
/// construction; the substantive validity condition is that every relator
/// maps into the target's normal closure.
#[derive(Clone, Debug)]
pub struct SquadMorphism {
    pub source: Arc<SquadPresentation>,
    pub target: Arc<SquadPresentation>,
    pub images0: Vec<Nil2Word>,
    pub images1: Vec<SquadElement1>,
}

impl PartialEq for SquadMorphism {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.source, &other.source)
            && Arc::ptr_eq(&self.target, &other.target)
            && self.images0 == other.images0
            && self.images1 == other.images1
    }
}

impl SquadMorphism {
    pub fn new(
        source: Arc<SquadPresentation>,
        target: Arc<SquadPresentation>,
        images0: Vec<Nil2Word>,
        images1: Vec<SquadElement1>,
    ) -> Result<Self, SquadError> {
        if images0.len() != source.free().e0().len() || images1.len() != source.free().e1().len() {
            return Err(SquadError::CarrierMismatch);
        }
        for w in &images0 {
            if w.gens() != target.free().g0() {
                return Err(SquadError::CarrierMismatch);
            }
        }
        for x in &images1 {
            if x.w.gens() != target.free().e1() || x.hat.basis() != target.free().e0() {
                return Err(SquadError::CarrierMismatch);
            }
        }
        Ok(SquadMorphism { source, target, images0, images1 })
    }

    pub fn identity(p: &Arc<SquadPresentation>) -> Self {
        let images0 = (0..p.free().e0().len()).map(|i| p.free().e0_generator(i)).collect();
        let images1 = (0..p.free().e1().len()).map(|l| p.free().e1_generator(l)).collect();
        SquadMorphism { source: p.clone(), target: p.clone(), images0, images1 }
    }

    /// Degree-0 image of a single combined generator.
    pub fn image_g0(&self, i: usize) -> Nil2Word {
        let e0n = self.source.free().e0().len();
        if i < e0n {
            self.images0[i].clone()
        } else {
            self.target.free().boundary(&self.images1[i - e0n])
        }
    }

    pub fn map0(&self, w: &Nil2Word) -> Nil2Word {
        let table: Vec<Nil2Word> =
            (0..self.source.free().g0().len()).map(|i| self.image_g0(i)).collect();
        w.substitute(self.target.free().g0().clone(), |i| table[i].clone())
            .expect("substitution stays in the target carrier")
    }

    pub fn map1(&self, x: &SquadElement1) -> SquadElement1 {
        let src = self.source.free();
        let tgt = self.target.free();
        let mut out = tgt.zero1();
        for (&(i, j), c) in x.hat.wedge_coeffs() {
            let b = tgt.bracket(&self.images0[i], &self.images0[j]);
            out = tgt.add1(&out, &tgt.pow1(&b, c));
        }
        for &i in x.hat.diag_support() {
            let b = tgt.bracket(&self.images0[i], &self.images0[i]);
            out = tgt.add1(&out, &b);
        }
        for (&(i, l), c) in &x.mix {
            let dl = tgt.boundary(&self.images1[l]);
            let b = tgt.bracket(&self.images0[i], &dl);
            out = tgt.add1(&out, &tgt.pow1(&b, c));
        }
        // ⟨E1⟩^nil part: substitute generator images, commutator letters map
        // to commutators of images.
        for (&l, a) in x.w.gen_exponents() {
            out = tgt.add1(&out, &tgt.pow1(&self.images1[l], a));
        }
        for (&(l, m), c) in x.w.comm_exponents() {
            let comm = tgt.commutator1(&self.images1[m], &self.images1[l]);
            out = tgt.add1(&out, &tgt.pow1(&comm, c));
        }
        let _ = src;
        out
    }

    /// Checks relator preservation and the two morphism laws on generators.
    pub fn check(&self) -> Result<(), SquadError> {
        for (idx, r) in self.source.r0().iter().enumerate() {
            if !self.target.is_zero0(&self.map0(r)) {
                return Err(SquadError::MorphismLaw {
                    gen: format!("R0[{}]", idx),
                    law: "degree-0 relator does not map into N0 of the target".into(),
                });
            }
        }
        for (idx, r) in self.source.r1().iter().enumerate() {
            if !self.target.is_zero1(&self.map1(r)) {
                return Err(SquadError::MorphismLaw {
                    gen: format!("R1[{}]", idx),
                    law: "degree-1 relator does not map into N1 of the target".into(),
                });
            }
        }
        let src = self.source.free();
        let tgt = self.target.free();
        // ∂ f1 = f0 ∂ on degree-1 generators.
        for l in 0..src.e1().len() {
            let lhs = tgt.boundary(&self.images1[l]);
            let rhs = self.map0(&src.boundary_symbol(l));
            if !self.target.eq0(&lhs, &rhs) {
                return Err(SquadError::MorphismLaw {
                    gen: src.e1().name(l).to_string(),
                    law: "∂ f1 ≠ f0 ∂".into(),
                });
            }
        }
        // f1⟨x, y⟩ = ⟨f0 x, f0 y⟩ on degree-0 generator pairs.
        for i in 0..src.g0().len() {
            for j in 0..src.g0().len() {
                let x = Nil2Word::generator(src.g0().clone(), i);
                let y = Nil2Word::generator(src.g0().clone(), j);
                let lhs = self.map1(&src.bracket(&x, &y));
                let rhs = tgt.bracket(&self.map0(&x), &self.map0(&y));
                if !self.target.eq1(&lhs, &rhs) {
                    return Err(SquadError::MorphismLaw {
                        gen: format!("({}, {})", src.g0().name(i), src.g0().name(j)),
                        law: "bracket compatibility".into(),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn compose(late: &SquadMorphism, early: &SquadMorphism) -> Result<SquadMorphism, SquadError> {
        if !Arc::ptr_eq(&early.target, &late.source) {
            return Err(SquadError::CarrierMismatch);
        }
        let images0 = early.images0.iter().map(|w| late.map0(w)).collect();
        let images1 = early.images1.iter().map(|x| late.map1(x)).collect();
        SquadMorphism::new(early.source.clone(), late.target.clone(), images0, images1)
    }

    /// Matrix of the induced map on π0, columns indexed by source generators.
    pub fn induced_pi0(&self) -> Vec<Vec<BigInt>> {
        self.source
            .pi0()
            .reps
            .iter()
            .map(|rep| self.target.pi0_class(&self.map0(rep)))
            .collect()
    }

    pub fn induced_pi1(&self) -> Result<Vec<Vec<BigInt>>, SquadError> {
        let (_, reps) = self.source.pi1();
        reps.iter().map(|rep| self.target.pi1_class(&self.map1(rep))).collect()
    }
}

/// Homotopy α: f ⇒ g, stored by its values on the combined degree-0
/// generators of the source and extended to arbitrary words by
/// α(c+d) = α(c) + α(d) + ⟨f0(d), −f0(c) + g0(c)⟩.
#[derive(Clone, Debug)]
pub struct Homotopy {
    pub f: SquadMorphism,
    pub g: SquadMorphism,
    pub values: Vec<SquadElement1>,
}

impl Homotopy {
    pub fn new(
        f: SquadMorphism,
        g: SquadMorphism,
        values: Vec<SquadElement1>,
    ) -> Result<Self, SquadError> {
        if !Arc::ptr_eq(&f.source, &g.source) || !Arc::ptr_eq(&f.target, &g.target) {
            return Err(SquadError::CarrierMismatch);
        }
        if values.len() != f.source.free().g0().len() {
            return Err(SquadError::CarrierMismatch);
        }
        Ok(Homotopy { f, g, values })
    }

    pub fn zero(f: &SquadMorphism) -> Homotopy {
        let n = f.source.free().g0().len();
        let values = (0..n).map(|_| f.target.free().zero1()).collect();
        Homotopy { f: f.clone(), g: f.clone(), values }
    }

    fn delta_ab(&self, w: &Nil2Word) -> Vec<BigInt> {
        // abelianization of −f0(w) + g0(w)
        let fa = self.f.map0(w).abelianize();
        let ga = self.g.map0(w).abelianize();
        fa.iter().zip(ga).map(|(x, y)| y - x).collect()
    }

    /// α on a single generator power, by the closed form
    /// α(x^a) = a·α(x) + C(a,2)·⟨f0 x, −f0 x + g0 x⟩.
    fn eval_power(&self, base_value: &SquadElement1, base_word: &Nil2Word, a: &BigInt) -> SquadElement1 {
        let tgt = self.f.target.free();
        let mut out = tgt.pow1(base_value, a);
        let choose2 = (a * (a - BigInt::one())) / BigInt::from(2);
        if !choose2.is_zero() {
            let b = tgt.bracket_ab(&self.f.map0(base_word).abelianize(), &self.delta_ab(base_word));
            out = tgt.add1(&out, &tgt.pow1(&b, &choose2));
        }
        out
    }

    /// Value on a basic commutator [g_j, g_i], obtained by evaluating the
    /// four-letter word −g_j − g_i + g_j + g_i through the first law.
    fn eval_basic_commutator(&self, i: usize, j: usize) -> SquadElement1 {
        let src = self.f.source.free();
        let gi = Nil2Word::generator(src.g0().clone(), i);
        let gj = Nil2Word::generator(src.g0().clone(), j);
        let letters = [
            (gj.inverse(), j, BigInt::from(-1)),
            (gi.inverse(), i, BigInt::from(-1)),
            (gj.clone(), j, BigInt::one()),
            (gi.clone(), i, BigInt::one()),
        ];
        let tgt = self.f.target.free();
        let mut alpha = tgt.zero1();
        let mut rest_word = Nil2Word::identity(src.g0().clone());
        // Fold from the right: α(l + rest) = α(l) + α(rest) + ⟨f0(rest), δ(l)⟩.
        for (word, idx, exp) in letters.iter().rev() {
            let gen_word = Nil2Word::generator(src.g0().clone(), *idx);
            let al = self.eval_power(&self.values[*idx], &gen_word, exp);
            let bracket =
                tgt.bracket_ab(&self.f.map0(&rest_word).abelianize(), &self.delta_ab(word));
            alpha = tgt.add1(&tgt.add1(&al, &alpha), &bracket);
            rest_word = word.mul(&rest_word).expect("same gens");
        }
        alpha
    }

    /// First-law extension of α to an arbitrary degree-0 word.
    pub fn eval(&self, w: &Nil2Word) -> SquadElement1 {
        let src = self.f.source.free();
        let tgt = self.f.target.free();
        // Letters of the normal form, in order: generator powers then basic
        // commutator powers.
        enum Letter {
            Gen(usize, BigInt),
            Comm(usize, usize, BigInt),
        }
        let mut letters = Vec::new();
        for (&i, a) in w.gen_exponents() {
            letters.push(Letter::Gen(i, a.clone()));
        }
        for (&(i, j), c) in w.comm_exponents() {
            letters.push(Letter::Comm(i, j, c.clone()));
        }
        let mut alpha = tgt.zero1();
        let mut rest_word = Nil2Word::identity(src.g0().clone());
        for letter in letters.iter().rev() {
            let (letter_word, letter_alpha) = match letter {
                Letter::Gen(i, a) => {
                    let gw = Nil2Word::generator(src.g0().clone(), *i);
                    let al = self.eval_power(&self.values[*i], &gw, a);
                    (gw.pow(a), al)
                }
                Letter::Comm(i, j, c) => {
                    let base = Nil2Word::generator(src.g0().clone(), *j)
                        .commutator(&Nil2Word::generator(src.g0().clone(), *i))
                        .expect("same gens");
                    // ⟨f0 K, ·⟩ vanishes (K abelianizes to 0), so powers are
                    // plain multiples.
                    let al = tgt.pow1(&self.eval_basic_commutator(*i, *j), c);
                    (base.pow(c), al)
                }
            };
            let bracket =
                tgt.bracket_ab(&self.f.map0(&rest_word).abelianize(), &self.delta_ab(&letter_word));
            alpha = tgt.add1(&tgt.add1(&letter_alpha, &alpha), &bracket);
            rest_word = letter_word.mul(&rest_word).expect("same gens");
        }
        alpha
    }

    /// Verifies the three homotopy laws on generators (with the first law
    /// exercised on all generator pairs) and well-definedness on relators.
    pub fn check(&self) -> Result<(), SquadError> {
        let src = self.f.source.free();
        let target = &self.f.target;
        let tgt = target.free();
        // Law 2: g0(c) = f0(c) + ∂α(c) on every combined generator.
        for i in 0..src.g0().len() {
            let c = Nil2Word::generator(src.g0().clone(), i);
            let rhs = self.f.map0(&c).mul(&tgt.boundary(&self.values[i])).expect("gens");
            if !target.eq0(&self.g.map0(&c), &rhs) {
                return Err(SquadError::HomotopyLaw {
                    gen: src.g0().name(i).to_string(),
                    law: "g0 ≠ f0 + ∂α".into(),
                });
            }
        }
        // Law 3: g1(c1) = f1(c1) + α∂(c1) on E1 generators.
        for l in 0..src.e1().len() {
            let c1 = src.e1_generator(l);
            let rhs = tgt.add1(&self.f.map1(&c1), &self.eval(&src.boundary(&c1)));
            if !target.eq1(&self.g.map1(&c1), &rhs) {
                return Err(SquadError::HomotopyLaw {
                    gen: src.e1().name(l).to_string(),
                    law: "g1 ≠ f1 + α∂".into(),
                });
            }
        }
        // Law 1 on generator pairs, including out-of-order products.
        for i in 0..src.g0().len() {
            for j in 0..src.g0().len() {
                let c = Nil2Word::generator(src.g0().clone(), i);
                let d = Nil2Word::generator(src.g0().clone(), j);
                let lhs = self.eval(&c.mul(&d).expect("gens"));
                let bracket = tgt.bracket_ab(&self.f.map0(&d).abelianize(), &self.delta_ab(&c));
                let rhs = tgt.add1(&tgt.add1(&self.values[i], &self.values[j]), &bracket);
                if !target.eq1(&lhs, &rhs) {
                    return Err(SquadError::HomotopyLaw {
                        gen: format!("({}, {})", src.g0().name(i), src.g0().name(j)),
                        law: "first law".into(),
                    });
                }
            }
        }
        // Well-definedness: α kills the degree-0 relators.
        for (idx, r) in self.f.source.r0().iter().enumerate() {
            if !target.is_zero1(&self.eval(r)) {
                return Err(SquadError::HomotopyLaw {
                    gen: format!("R0[{}]", idx),
                    law: "α does not vanish on relator".into(),
                });
            }
        }
        for (idx, r) in self.f.source.r1().iter().enumerate() {
            let b = self.f.source.free().boundary(r);
            if !target.is_zero1(&self.eval(&b)) {
                return Err(SquadError::HomotopyLaw {
                    gen: format!("∂R1[{}]", idx),
                    law: "α does not vanish on relator boundary".into(),
                });
            }
        }
        Ok(())
    }

    /// Vertical composition: (β □ α)(x) = α(x) + β(x), a homotopy f ⇒ h.
    pub fn compose_vertical(beta: &Homotopy, alpha: &Homotopy) -> Result<Homotopy, SquadError> {
        if beta.f != alpha.g {
            return Err(SquadError::CarrierMismatch);
        }
        let tgt = alpha.f.target.free();
        let values = alpha
            .values
            .iter()
            .zip(&beta.values)
            .map(|(a, b)| tgt.add1(a, b))
            .collect();
        Homotopy::new(alpha.f.clone(), beta.g.clone(), values)
    }

    /// Left whiskering h·α: values are h1(α(x)).
    pub fn whisker_left(h: &SquadMorphism, alpha: &Homotopy) -> Result<Homotopy, SquadError> {
        if !Arc::ptr_eq(&h.source, &alpha.f.target) {
            return Err(SquadError::CarrierMismatch);
        }
        let values = alpha.values.iter().map(|v| h.map1(v)).collect();
        Homotopy::new(
            SquadMorphism::compose(h, &alpha.f)?,
            SquadMorphism::compose(h, &alpha.g)?,
            values,
        )
    }

    /// Right whiskering α·k: values are α(k0(x)).
    pub fn whisker_right(alpha: &Homotopy, k: &SquadMorphism) -> Result<Homotopy, SquadError> {
        if !Arc::ptr_eq(&k.target, &alpha.f.source) {
            return Err(SquadError::CarrierMismatch);
        }
        let src = k.source.free();
        let values = (0..src.g0().len())
            .map(|i| {
                let w = k.map0(&Nil2Word::generator(src.g0().clone(), i));
                alpha.eval(&w)
            })
            .collect();
        Homotopy::new(
            SquadMorphism::compose(&alpha.f, k)?,
            SquadMorphism::compose(&alpha.g, k)?,
            values,
        )
    }

    /// Pointwise value equality modulo N1 of the target.
    pub fn values_equal(&self, other: &Homotopy) -> bool {
        self.values.len() == other.values.len()
            && self
                .values
                .iter()
                .zip(&other.values)
                .all(|(a, b)| self.f.target.eq1(a, b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use super::super::free::FreeSquad;
    use crate::nil2::GenSet;

    fn one_gen() -> Arc<SquadPresentation> {
        let f = FreeSquad::new(GenSet::from_strs(&["γ"]), GenSet::from_strs(&[])).unwrap();
        Arc::new(SquadPresentation::new(f, vec![], vec![]).unwrap())
    }

    #[test]
    fn identity_morphism_checks_and_induces_identity() {
        let p = one_gen();
        let id = SquadMorphism::identity(&p);
        id.check().unwrap();
        assert_eq!(id.induced_pi0(), vec![vec![BigInt::one()]]);
        assert_eq!(id.induced_pi1().unwrap(), vec![vec![BigInt::one()]]);
    }

    #[test]
    fn doubling_morphism_kills_pi1() {
        let p = one_gen();
        let two = p.free().e0_generator(0).pow(&BigInt::from(2));
        let f = SquadMorphism::new(p.clone(), p.clone(), vec![two], vec![]).unwrap();
        f.check().unwrap();
        assert_eq!(f.induced_pi0(), vec![vec![BigInt::from(2)]]);
        // ⟨γ,γ⟩ ↦ ⟨2γ,2γ⟩ = 4⟨γ,γ⟩ = 0.
        assert_eq!(f.induced_pi1().unwrap(), vec![vec![BigInt::zero()]]);
    }

    #[test]
    fn dropped_relation_fails_check() {
        let f = FreeSquad::new(GenSet::from_strs(&["a"]), GenSet::from_strs(&[])).unwrap();
        let two_a = f.e0_generator(0).pow(&BigInt::from(2));
        let with_rel =
            Arc::new(SquadPresentation::new(f.clone(), vec![two_a], vec![]).unwrap());
        let without = Arc::new(SquadPresentation::new(f.clone(), vec![], vec![]).unwrap());
        let m = SquadMorphism::new(
            with_rel,
            without.clone(),
            vec![without.free().e0_generator(0)],
            vec![],
        )
        .unwrap();
        assert!(m.check().is_err());
    }

    #[test]
    fn zero_homotopy_is_identity_two_cell() {
        let p = one_gen();
        let id = SquadMorphism::identity(&p);
        let z = Homotopy::zero(&id);
        z.check().unwrap();
        let zz = Homotopy::compose_vertical(&z, &z).unwrap();
        assert!(zz.values_equal(&z));
    }
}

//! Normal-form arithmetic in free groups of nilpotency class 2, and the
//! auxiliary abelian constructions Λ²A ⊕ (Z/2)[E] realizing the quotient of
//! the tensor square by a⊗b + b⊗a.
//!
//! A word is stored as generator exponents together with exponents of the
//! basic commutators [g_j, g_i] for i < j in the fixed generator order.
//! Multiplication collects the right factor's generators past the left
//! factor's, paying the bilinear commutator correction.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

#[derive(Debug, thiserror::Error)]
pub enum Nil2Error {
    #[error("generator sets differ")]
    GenSetMismatch,
    #[error("duplicate generator name `{0}`")]
    DuplicateGenerator(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
}

/// Ordered set of distinct generator names. The declaration order is the
/// collection order, so canonical forms are reproducible across runs.
#[derive(Debug, PartialEq, Eq)]
pub struct GenSet {
    names: Vec<String>,
    index: BTreeMap<String, usize>,
}

impl GenSet {
    pub fn new(names: Vec<String>) -> Result<Arc<Self>, Nil2Error> {
        let mut index = BTreeMap::new();
        for (i, n) in names.iter().enumerate() {
            if index.insert(n.clone(), i).is_some() {
                return Err(Nil2Error::DuplicateGenerator(n.clone()));
            }
        }
        Ok(Arc::new(GenSet { names, index }))
    }

    pub fn from_strs(names: &[&str]) -> Arc<Self> {
        GenSet::new(names.iter().map(|s| s.to_string()).collect()).expect("distinct names")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Result<usize, Nil2Error> {
        self.index.get(name).copied().ok_or_else(|| Nil2Error::UnknownGenerator(name.to_string()))
    }

    /// Lexicographic list of pairs (i, j), i < j, indexing basic commutators.
    pub fn comm_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::with_capacity(n * (n.saturating_sub(1)) / 2);
        for i in 0..n {
            for j in i + 1..n {
                out.push((i, j));
            }
        }
        out
    }
}

fn same_gens(a: &Arc<GenSet>, b: &Arc<GenSet>) -> Result<(), Nil2Error> {
    if Arc::ptr_eq(a, b) || a == b {
        Ok(())
    } else {
        Err(Nil2Error::GenSetMismatch)
    }
}

/// Element of the free nilpotency-class-2 group on a generator set, in
/// canonical normal form  ∏ g_i^{a_i} · ∏_{i<j} [g_j, g_i]^{c_ij}.
#[derive(Clone, Debug)]
pub struct Nil2Word {
    gens: Arc<GenSet>,
    gen_exp: BTreeMap<usize, BigInt>,
    comm_exp: BTreeMap<(usize, usize), BigInt>,
}

impl PartialEq for Nil2Word {
    fn eq(&self, other: &Self) -> bool {
        self.gens == other.gens && self.gen_exp == other.gen_exp && self.comm_exp == other.comm_exp
    }
}
impl Eq for Nil2Word {}

impl Nil2Word {
    pub fn identity(gens: Arc<GenSet>) -> Self {
        Nil2Word { gens, gen_exp: BTreeMap::new(), comm_exp: BTreeMap::new() }
    }

    pub fn generator(gens: Arc<GenSet>, i: usize) -> Self {
        assert!(i < gens.len());
        let mut w = Nil2Word::identity(gens);
        w.gen_exp.insert(i, BigInt::one());
        w
    }

    pub fn gens(&self) -> &Arc<GenSet> {
        &self.gens
    }

    pub fn is_identity(&self) -> bool {
        self.gen_exp.is_empty() && self.comm_exp.is_empty()
    }

    pub fn gen_exponent(&self, i: usize) -> BigInt {
        self.gen_exp.get(&i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn comm_exponent(&self, i: usize, j: usize) -> BigInt {
        assert!(i < j);
        self.comm_exp.get(&(i, j)).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn gen_exponents(&self) -> &BTreeMap<usize, BigInt> {
        &self.gen_exp
    }

    pub fn comm_exponents(&self) -> &BTreeMap<(usize, usize), BigInt> {
        &self.comm_exp
    }

    fn set_gen(&mut self, i: usize, v: BigInt) {
        if v.is_zero() {
            self.gen_exp.remove(&i);
        } else {
            self.gen_exp.insert(i, v);
        }
    }

    fn set_comm(&mut self, i: usize, j: usize, v: BigInt) {
        if v.is_zero() {
            self.comm_exp.remove(&(i, j));
        } else {
            self.comm_exp.insert((i, j), v);
        }
    }

    pub fn from_parts(
        gens: Arc<GenSet>,
        gen_exp: BTreeMap<usize, BigInt>,
        comm_exp: BTreeMap<(usize, usize), BigInt>,
    ) -> Self {
        let mut w = Nil2Word::identity(gens);
        for (i, v) in gen_exp {
            assert!(i < w.gens.len());
            w.set_gen(i, v);
        }
        for ((i, j), v) in comm_exp {
            assert!(i < j && j < w.gens.len());
            w.set_comm(i, j, v);
        }
        w
    }

    /// Product u·v in normal form. Collecting v's generators past u's adds
    /// a_j · b_i to the exponent of [g_j, g_i] (b + a = a + b + [b, a]).
    pub fn mul(&self, other: &Nil2Word) -> Result<Nil2Word, Nil2Error> {
        same_gens(&self.gens, &other.gens)?;
        let mut out = self.clone();
        for ((i, j), c) in &other.comm_exp {
            let v = out.comm_exponent(*i, *j) + c;
            out.set_comm(*i, *j, v);
        }
        for (&i, b_i) in &other.gen_exp {
            // Collection term against every u-generator with larger index.
            for (&j, a_j) in &self.gen_exp {
                if j > i {
                    let v = out.comm_exponent(i, j) + a_j * b_i;
                    out.set_comm(i, j, v);
                }
            }
            let v = out.gen_exponent(i) + b_i;
            out.set_gen(i, v);
        }
        Ok(out)
    }

    pub fn inverse(&self) -> Nil2Word {
        let mut out = Nil2Word::identity(self.gens.clone());
        for (&i, a) in &self.gen_exp {
            out.set_gen(i, -a);
        }
        for (&(i, j), c) in &self.comm_exp {
            out.set_comm(i, j, -c);
        }
        // Reordering the inverted generators contributes a_i·a_j per pair.
        let idx: Vec<usize> = self.gen_exp.keys().copied().collect();
        for (p, &i) in idx.iter().enumerate() {
            for &j in &idx[p + 1..] {
                let add = &self.gen_exp[&i] * &self.gen_exp[&j];
                let v = out.comm_exponent(i, j) + add;
                out.set_comm(i, j, v);
            }
        }
        out
    }

    /// w^k in closed form: exponents scale by k and each commutator picks up
    /// the collection term C(k,2)·a_i·a_j.
    pub fn pow(&self, k: &BigInt) -> Nil2Word {
        let mut out = Nil2Word::identity(self.gens.clone());
        let choose2 = (k * (k - BigInt::one())) / BigInt::from(2);
        for (&i, a) in &self.gen_exp {
            out.set_gen(i, a * k);
        }
        for (&(i, j), c) in &self.comm_exp {
            out.set_comm(i, j, c * k);
        }
        let idx: Vec<usize> = self.gen_exp.keys().copied().collect();
        for (p, &i) in idx.iter().enumerate() {
            for &j in &idx[p + 1..] {
                let add = &choose2 * &self.gen_exp[&i] * &self.gen_exp[&j];
                let v = out.comm_exponent(i, j) + add;
                out.set_comm(i, j, v);
            }
        }
        out
    }

    pub fn commutator(&self, other: &Nil2Word) -> Result<Nil2Word, Nil2Error> {
        let a = self.inverse().mul(&other.inverse())?;
        let b = self.mul(other)?;
        a.mul(&b)
    }

    /// Image in the free abelianization Z^gens.
    pub fn abelianize(&self) -> Vec<BigInt> {
        (0..self.gens.len()).map(|i| self.gen_exponent(i)).collect()
    }

    /// Full coordinate vector: generator exponents, then basic-commutator
    /// exponents in lexicographic pair order.
    pub fn coords(&self) -> Vec<BigInt> {
        let mut out = self.abelianize();
        for (i, j) in self.gens.comm_pairs() {
            out.push(self.comm_exponent(i, j));
        }
        out
    }

    pub fn comm_coords(&self) -> Vec<BigInt> {
        self.gens.comm_pairs().iter().map(|&(i, j)| self.comm_exponent(i, j)).collect()
    }

    pub fn from_coords(gens: Arc<GenSet>, coords: &[BigInt]) -> Nil2Word {
        let n = gens.len();
        let pairs = gens.comm_pairs();
        assert_eq!(coords.len(), n + pairs.len());
        let mut w = Nil2Word::identity(gens);
        for i in 0..n {
            w.set_gen(i, coords[i].clone());
        }
        for (k, (i, j)) in pairs.into_iter().enumerate() {
            w.set_comm(i, j, coords[n + k].clone());
        }
        w
    }

    /// True when the word lies in the commutator subgroup (is central).
    pub fn is_central(&self) -> bool {
        self.gen_exp.is_empty()
    }

    /// Maps the word through a generator-to-generator embedding given by
    /// `image[i]` = index of the image of generator i in the target set.
    pub fn map_generators(&self, target: Arc<GenSet>, image: &[usize]) -> Nil2Word {
        assert_eq!(image.len(), self.gens.len());
        let mut out = Nil2Word::identity(target);
        for (&i, a) in &self.gen_exp {
            out.set_gen(image[i], a.clone());
        }
        for (&(i, j), c) in &self.comm_exp {
            let (ti, tj) = (image[i], image[j]);
            assert_ne!(ti, tj, "embedding must be injective on used generators");
            if ti < tj {
                let v = out.comm_exponent(ti, tj) + c;
                out.set_comm(ti, tj, v);
            } else {
                let v = out.comm_exponent(tj, ti) - c;
                out.set_comm(tj, ti, v);
            }
        }
        out
    }

    /// Substitutes each generator by a word in the target group. Exponents
    /// are applied by closed-form powers; commutator letters map to
    /// commutators of the images.
    pub fn substitute(
        &self,
        target_gens: Arc<GenSet>,
        image: impl Fn(usize) -> Nil2Word,
    ) -> Result<Nil2Word, Nil2Error> {
        let mut out = Nil2Word::identity(target_gens);
        for (&i, a) in &self.gen_exp {
            out = out.mul(&image(i).pow(a))?;
        }
        for (&(i, j), c) in &self.comm_exp {
            let comm = image(j).commutator(&image(i))?;
            out = out.mul(&comm.pow(c))?;
        }
        Ok(out)
    }

    pub fn display(&self) -> String {
        if self.is_identity() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        for (&i, a) in &self.gen_exp {
            if a.is_one() {
                parts.push(self.gens.name(i).to_string());
            } else {
                parts.push(format!("{}^{}", self.gens.name(i), a));
            }
        }
        for (&(i, j), c) in &self.comm_exp {
            let base = format!("[{},{}]", self.gens.name(j), self.gens.name(i));
            if c.is_one() {
                parts.push(base);
            } else {
                parts.push(format!("{}^{}", base, c));
            }
        }
        parts.join(" ")
    }
}

/// Element of ⊗̂²Z[E] ≅ Λ²Z[E] ⊕ (Z/2)[E]: the quotient of the tensor square
/// of the free abelian group on E by a⊗b + b⊗a = 0. The class of e_i⊗e_j for
/// i < j is the wedge coordinate (i, j); the class of e_i⊗e_i has order 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HatSquareElem {
    basis: Arc<GenSet>,
    wedge: BTreeMap<(usize, usize), BigInt>,
    diag: BTreeSet<usize>,
}

impl HatSquareElem {
    pub fn zero(basis: Arc<GenSet>) -> Self {
        HatSquareElem { basis, wedge: BTreeMap::new(), diag: BTreeSet::new() }
    }

    pub fn basis(&self) -> &Arc<GenSet> {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.wedge.is_empty() && self.diag.is_empty()
    }

    pub fn wedge_coeffs(&self) -> &BTreeMap<(usize, usize), BigInt> {
        &self.wedge
    }

    pub fn diag_support(&self) -> &BTreeSet<usize> {
        &self.diag
    }

    fn set_wedge(&mut self, i: usize, j: usize, v: BigInt) {
        if v.is_zero() {
            self.wedge.remove(&(i, j));
        } else {
            self.wedge.insert((i, j), v);
        }
    }

    pub fn from_parts(
        basis: Arc<GenSet>,
        wedge: BTreeMap<(usize, usize), BigInt>,
        diag: BTreeSet<usize>,
    ) -> Self {
        let mut h = HatSquareElem::zero(basis);
        for ((i, j), v) in wedge {
            assert!(i < j && j < h.basis.len());
            h.set_wedge(i, j, v);
        }
        for i in diag {
            assert!(i < h.basis.len());
            h.diag.insert(i);
        }
        h
    }

    pub fn add(&self, other: &HatSquareElem) -> Result<HatSquareElem, Nil2Error> {
        same_gens(&self.basis, &other.basis)?;
        let mut out = self.clone();
        for (&(i, j), v) in &other.wedge {
            let s = out.wedge.get(&(i, j)).cloned().unwrap_or_else(BigInt::zero) + v;
            out.set_wedge(i, j, s);
        }
        for &i in &other.diag {
            if !out.diag.remove(&i) {
                out.diag.insert(i);
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> HatSquareElem {
        let mut out = self.clone();
        for v in out.wedge.values_mut() {
            *v = -&*v;
        }
        out
    }

    pub fn scale(&self, k: &BigInt) -> HatSquareElem {
        let mut out = HatSquareElem::zero(self.basis.clone());
        for (&(i, j), v) in &self.wedge {
            out.set_wedge(i, j, v * k);
        }
        if k.is_odd() {
            out.diag = self.diag.clone();
        }
        out
    }

    /// a⊗̂b for abelian vectors over the basis. Bilinear, and
    /// hat_square(a,b) + hat_square(b,a) = 0 by construction.
    pub fn hat_square(basis: Arc<GenSet>, a: &[BigInt], b: &[BigInt]) -> HatSquareElem {
        let n = basis.len();
        assert_eq!(a.len(), n);
        assert_eq!(b.len(), n);
        let mut out = HatSquareElem::zero(basis);
        for i in 0..n {
            for j in i + 1..n {
                let v = &a[i] * &b[j] - &a[j] * &b[i];
                out.set_wedge(i, j, v);
            }
            let d = &a[i] * &b[i];
            if d.is_odd() {
                out.diag.insert(i);
            }
        }
        out
    }

    /// Coordinates: wedge entries in pair order, then diagonal Z/2 entries.
    pub fn coords(&self) -> Vec<BigInt> {
        let mut out: Vec<BigInt> = self
            .basis
            .comm_pairs()
            .iter()
            .map(|&(i, j)| self.wedge.get(&(i, j)).cloned().unwrap_or_else(BigInt::zero))
            .collect();
        for i in 0..self.basis.len() {
            out.push(if self.diag.contains(&i) { BigInt::one() } else { BigInt::zero() });
        }
        out
    }

    pub fn from_coords(basis: Arc<GenSet>, coords: &[BigInt]) -> HatSquareElem {
        let pairs = basis.comm_pairs();
        let n = basis.len();
        let np = pairs.len();
        assert_eq!(coords.len(), np + n);
        let mut out = HatSquareElem::zero(basis);
        for (k, (i, j)) in pairs.into_iter().enumerate() {
            out.set_wedge(i, j, coords[k].clone());
        }
        for i in 0..n {
            if coords[np + i].is_odd() {
                out.diag.insert(i);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(gens: &Arc<GenSet>, letters: &[(usize, i64)]) -> Nil2Word {
        let mut out = Nil2Word::identity(gens.clone());
        for &(i, e) in letters {
            let g = Nil2Word::generator(gens.clone(), i).pow(&BigInt::from(e));
            out = out.mul(&g).unwrap();
        }
        out
    }

    #[test]
    fn mul_inverse_cancel() {
        let gens = GenSet::from_strs(&["a", "b"]);
        let a = Nil2Word::generator(gens.clone(), 0);
        assert!(a.mul(&a.inverse()).unwrap().is_identity());
    }

    #[test]
    fn collection_identity() {
        // b·a = a·b·[b,a]
        let gens = GenSet::from_strs(&["a", "b"]);
        let a = Nil2Word::generator(gens.clone(), 0);
        let b = Nil2Word::generator(gens.clone(), 1);
        let ba = b.mul(&a).unwrap();
        assert_eq!(ba.gen_exponent(0), BigInt::one());
        assert_eq!(ba.gen_exponent(1), BigInt::one());
        assert_eq!(ba.comm_exponent(0, 1), BigInt::one());
    }

    #[test]
    fn commutator_conventions() {
        let gens = GenSet::from_strs(&["a", "b"]);
        let a = Nil2Word::generator(gens.clone(), 0);
        let b = Nil2Word::generator(gens.clone(), 1);
        assert!(a.commutator(&a).unwrap().is_identity());
        // [a,b] = [b,a]^{-1}
        let ab = a.commutator(&b).unwrap();
        assert!(ab.gen_exponents().is_empty());
        assert_eq!(ab.comm_exponent(0, 1), BigInt::from(-1));
    }

    #[test]
    fn class_two_law() {
        let gens = GenSet::from_strs(&["a", "b", "c"]);
        let x = w(&gens, &[(0, 2), (1, -1), (2, 3)]);
        let y = w(&gens, &[(1, 1), (2, -2)]);
        let z = w(&gens, &[(0, -1), (2, 1)]);
        let inner = y.commutator(&z).unwrap();
        assert!(x.commutator(&inner).unwrap().is_identity());
    }

    #[test]
    fn pow_matches_repeated_mul() {
        let gens = GenSet::from_strs(&["a", "b", "c"]);
        let x = w(&gens, &[(1, 1), (0, 2), (2, -1)]);
        let mut acc = Nil2Word::identity(gens.clone());
        for _ in 0..5 {
            acc = acc.mul(&x).unwrap();
        }
        assert_eq!(acc, x.pow(&BigInt::from(5)));
        let mut acc = Nil2Word::identity(gens);
        for _ in 0..4 {
            acc = acc.mul(&x.inverse()).unwrap();
        }
        assert_eq!(acc, x.pow(&BigInt::from(-4)));
    }

    #[test]
    fn abelianize_is_homomorphism() {
        let gens = GenSet::from_strs(&["a", "b"]);
        let u = w(&gens, &[(1, 2), (0, -1)]);
        let v = w(&gens, &[(0, 1), (1, 1)]);
        let uv = u.mul(&v).unwrap();
        let sum: Vec<BigInt> =
            u.abelianize().iter().zip(v.abelianize()).map(|(x, y)| x + y).collect();
        assert_eq!(uv.abelianize(), sum);
    }

    #[test]
    fn hat_square_forced_values() {
        let basis = GenSet::from_strs(&["e", "f"]);
        let e = vec![BigInt::one(), BigInt::zero()];
        let f = vec![BigInt::zero(), BigInt::one()];
        let h = HatSquareElem::hat_square(basis.clone(), &e, &e);
        assert!(h.wedge_coeffs().is_empty());
        assert!(h.diag_support().contains(&0));
        assert!(h.add(&h).unwrap().is_zero());

        let ef = HatSquareElem::hat_square(basis.clone(), &e, &f);
        let fe = HatSquareElem::hat_square(basis.clone(), &f, &e);
        assert!(ef.add(&fe).unwrap().is_zero());

        let s: Vec<BigInt> = vec![BigInt::one(), BigInt::one()];
        let hs = HatSquareElem::hat_square(basis, &s, &s);
        assert!(hs.wedge_coeffs().is_empty());
        assert_eq!(hs.diag_support().len(), 2);
    }
}

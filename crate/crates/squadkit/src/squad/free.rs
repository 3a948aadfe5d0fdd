//! The free stable quadratic module F(E0, E1) and its structure maps.
//!
//! Degree 0 is the free nil-2 group on E0 ∪ ∂E1, where ∂e1 is a formal
//! degree-0 generator distinct from every element of E0. Degree 1 is the
//! direct product  ⊗̂²Z[E0] × Z[E0×E1] × ⟨E1⟩^nil.  The boundary, the bracket
//! and the action are the homomorphic extensions of their values on
//! generators.

use crate::exactlin::Ambient;
use crate::nil2::{GenSet, HatSquareElem, Nil2Error, Nil2Word};
use num_bigint::BigInt;
use num_traits::Zero;
use std::collections::BTreeMap;
use std::sync::Arc;

#[derive(Debug, thiserror::Error)]
pub enum SquadError {
    #[error(transparent)]
    Nil2(#[from] Nil2Error),
    #[error("element does not belong to this presentation's carrier")]
    CarrierMismatch,
    #[error("degree-0 generator name collision: `{0}`")]
    NameCollision(String),
    #[error("inconsistent presentation: boundary of degree-1 relator {index} is not in N0")]
    InconsistentPresentation { index: usize },
    #[error("morphism law failure at generator `{gen}`: {law}")]
    MorphismLaw { gen: String, law: String },
    #[error("homotopy law failure at `{gen}`: {law}")]
    HomotopyLaw { gen: String, law: String },
    #[error("element has nonzero boundary, no class in pi1")]
    NotInKernel,
    #[error("k-invariant well-definedness check failed on generator {0}")]
    KInvariantIllDefined(usize),
    #[error("presentation is not 0-free: {0}")]
    NotZeroFree(String),
}

/// Generator sets of a free stable quadratic module, together with the
/// combined degree-0 set E0 ∪ ∂E1.
#[derive(Debug, Clone)]
pub struct FreeSquad {
    e0: Arc<GenSet>,
    e1: Arc<GenSet>,
    g0: Arc<GenSet>,
}

impl PartialEq for FreeSquad {
    fn eq(&self, other: &Self) -> bool {
        self.e0 == other.e0 && self.e1 == other.e1
    }
}
impl Eq for FreeSquad {}

impl FreeSquad {
    pub fn new(e0: Arc<GenSet>, e1: Arc<GenSet>) -> Result<Self, SquadError> {
        let mut names: Vec<String> = e0.names().to_vec();
        for n in e1.names() {
            names.push(format!("∂{}", n));
        }
        let g0 = GenSet::new(names).map_err(|e| match e {
            Nil2Error::DuplicateGenerator(n) => SquadError::NameCollision(n),
            other => SquadError::Nil2(other),
        })?;
        Ok(FreeSquad { e0, e1, g0 })
    }

    pub fn e0(&self) -> &Arc<GenSet> {
        &self.e0
    }

    pub fn e1(&self) -> &Arc<GenSet> {
        &self.e1
    }

    /// Combined degree-0 generator set: E0 first, then the ∂E1 symbols.
    pub fn g0(&self) -> &Arc<GenSet> {
        &self.g0
    }

    pub fn boundary_symbol_index(&self, e1_index: usize) -> usize {
        self.e0.len() + e1_index
    }

    pub fn e0_generator(&self, i: usize) -> Nil2Word {
        Nil2Word::generator(self.g0.clone(), i)
    }

    pub fn boundary_symbol(&self, e1_index: usize) -> Nil2Word {
        Nil2Word::generator(self.g0.clone(), self.boundary_symbol_index(e1_index))
    }

    pub fn zero0(&self) -> Nil2Word {
        Nil2Word::identity(self.g0.clone())
    }

    pub fn zero1(&self) -> SquadElement1 {
        SquadElement1 {
            hat: HatSquareElem::zero(self.e0.clone()),
            mix: BTreeMap::new(),
            w: Nil2Word::identity(self.e1.clone()),
        }
    }

    pub fn e1_generator(&self, i: usize) -> SquadElement1 {
        let mut z = self.zero1();
        z.w = Nil2Word::generator(self.e1.clone(), i);
        z
    }

    /// Splits an abelianized degree-0 vector into its E0 part and ∂E1 part.
    fn split_ab<'a>(&self, a: &'a [BigInt]) -> (&'a [BigInt], &'a [BigInt]) {
        a.split_at(self.e0.len())
    }

    /// ∂(e0⊗̂e0', (e0'', e1), e1') = [e0', e0] + [∂e1, e0''] + ∂e1',
    /// extended as a homomorphism.
    pub fn boundary(&self, x: &SquadElement1) -> Nil2Word {
        let mut comm: BTreeMap<(usize, usize), BigInt> = BTreeMap::new();
        // Wedge part e_i ⊗̂ e_j (i<j) maps to [e_j, e_i]; diagonal classes die.
        for (&(i, j), c) in x.hat.wedge_coeffs() {
            *comm.entry((i, j)).or_insert_with(BigInt::zero) += c;
        }
        // Mixed part (e0'', e1) maps to [∂e1, e0''].
        for (&(i, l), c) in &x.mix {
            let dl = self.boundary_symbol_index(l);
            *comm.entry((i, dl)).or_insert_with(BigInt::zero) += c;
        }
        comm.retain(|_, v| !v.is_zero());
        let central = Nil2Word::from_parts(self.g0.clone(), BTreeMap::new(), comm);
        // ⟨E1⟩^nil part maps generator-to-generator onto the ∂E1 symbols.
        let image: Vec<usize> = (0..self.e1.len()).map(|l| self.boundary_symbol_index(l)).collect();
        let wpart = x.w.map_generators(self.g0.clone(), &image);
        central.mul(&wpart).expect("same generator set")
    }

    /// Bracket on abelianized degree-0 vectors (the homomorphism ω).
    pub fn bracket_ab(&self, a: &[BigInt], b: &[BigInt]) -> SquadElement1 {
        assert_eq!(a.len(), self.g0.len());
        assert_eq!(b.len(), self.g0.len());
        let (a0, a1) = self.split_ab(a);
        let (b0, b1) = self.split_ab(b);
        // ⟨e0, e0'⟩ = (e0⊗̂e0', 0, 0).
        let hat = HatSquareElem::hat_square(self.e0.clone(), a0, b0);
        // ⟨e0, ∂e1⟩ = (0, e0⊗e1, 0) = −⟨∂e1, e0⟩.
        let mut mix = BTreeMap::new();
        for i in 0..self.e0.len() {
            for l in 0..self.e1.len() {
                let v = &a0[i] * &b1[l] - &b0[i] * &a1[l];
                if !v.is_zero() {
                    mix.insert((i, l), v);
                }
            }
        }
        // ⟨∂e1, ∂e1'⟩ = (0, 0, [e1', e1]).
        let mut comm = BTreeMap::new();
        for l in 0..self.e1.len() {
            for m in l + 1..self.e1.len() {
                let v = &a1[l] * &b1[m] - &a1[m] * &b1[l];
                if !v.is_zero() {
                    comm.insert((l, m), v);
                }
            }
        }
        let w = Nil2Word::from_parts(self.e1.clone(), BTreeMap::new(), comm);
        SquadElement1 { hat, mix, w }
    }

    /// ⟨x, y⟩ = ω({x} ⊗ {y}).
    pub fn bracket(&self, x: &Nil2Word, y: &Nil2Word) -> SquadElement1 {
        self.bracket_ab(&x.abelianize(), &y.abelianize())
    }

    /// m^n = m + ⟨n, ∂m⟩.
    pub fn act(&self, m: &SquadElement1, n: &Nil2Word) -> SquadElement1 {
        let shift = self.bracket(n, &self.boundary(m));
        self.add1(m, &shift)
    }

    pub fn add1(&self, x: &SquadElement1, y: &SquadElement1) -> SquadElement1 {
        let hat = x.hat.add(&y.hat).expect("same basis");
        let mut mix = x.mix.clone();
        for (&k, v) in &y.mix {
            let s = mix.get(&k).cloned().unwrap_or_else(BigInt::zero) + v;
            if s.is_zero() {
                mix.remove(&k);
            } else {
                mix.insert(k, s);
            }
        }
        let w = x.w.mul(&y.w).expect("same generator set");
        SquadElement1 { hat, mix, w }
    }

    pub fn neg1(&self, x: &SquadElement1) -> SquadElement1 {
        SquadElement1 {
            hat: x.hat.neg(),
            mix: x.mix.iter().map(|(&k, v)| (k, -v)).collect(),
            w: x.w.inverse(),
        }
    }

    pub fn sub1(&self, x: &SquadElement1, y: &SquadElement1) -> SquadElement1 {
        self.add1(x, &self.neg1(y))
    }

    pub fn pow1(&self, x: &SquadElement1, k: &BigInt) -> SquadElement1 {
        let mut mix = BTreeMap::new();
        for (&key, v) in &x.mix {
            let s = v * k;
            if !s.is_zero() {
                mix.insert(key, s);
            }
        }
        SquadElement1 { hat: x.hat.scale(k), mix, w: x.w.pow(k) }
    }

    /// Coordinate layout of the degree-1 carrier:
    /// wedge pairs over E0, then E0 diagonal (Z/2), then E0×E1, then E1
    /// generator exponents, then E1 commutator pairs.
    pub fn ambient1(&self) -> Ambient {
        let mut moduli = Vec::new();
        moduli.extend(vec![BigInt::zero(); self.e0.comm_pairs().len()]);
        moduli.extend(vec![BigInt::from(2); self.e0.len()]);
        moduli.extend(vec![BigInt::zero(); self.e0.len() * self.e1.len()]);
        moduli.extend(vec![BigInt::zero(); self.e1.len()]);
        moduli.extend(vec![BigInt::zero(); self.e1.comm_pairs().len()]);
        Ambient::with_moduli(moduli)
    }

    /// Abelianized part of the layout (everything except E1 commutators).
    pub fn ambient1_ab(&self) -> Ambient {
        let full = self.ambient1();
        let cut = full.rank() - self.e1.comm_pairs().len();
        Ambient::with_moduli(full.moduli[..cut].to_vec())
    }

    pub fn ambient0(&self) -> Ambient {
        Ambient::free(self.g0.len() + self.g0.comm_pairs().len())
    }

    pub fn coords1(&self, x: &SquadElement1) -> Vec<BigInt> {
        let mut out = x.hat.coords();
        for i in 0..self.e0.len() {
            for l in 0..self.e1.len() {
                out.push(x.mix.get(&(i, l)).cloned().unwrap_or_else(BigInt::zero));
            }
        }
        out.extend(x.w.coords());
        out
    }

    /// Abelianized coordinates: full coordinates with the E1-commutator tail
    /// dropped.
    pub fn coords1_ab(&self, x: &SquadElement1) -> Vec<BigInt> {
        let mut c = self.coords1(x);
        c.truncate(c.len() - self.e1.comm_pairs().len());
        c
    }

    pub fn comm1_coords(&self, x: &SquadElement1) -> Vec<BigInt> {
        x.w.comm_coords()
    }

    pub fn from_coords1(&self, coords: &[BigInt]) -> SquadElement1 {
        let ambient = self.ambient1();
        let coords = ambient.reduce(coords);
        let wedge_n = self.e0.comm_pairs().len();
        let diag_n = self.e0.len();
        let mix_n = self.e0.len() * self.e1.len();
        let gen_n = self.e1.len();
        let hat = HatSquareElem::from_coords(
            self.e0.clone(),
            &coords[..wedge_n + diag_n],
        );
        let mut mix = BTreeMap::new();
        let mut k = wedge_n + diag_n;
        for i in 0..self.e0.len() {
            for l in 0..self.e1.len() {
                if !coords[k].is_zero() {
                    mix.insert((i, l), coords[k].clone());
                }
                k += 1;
            }
        }
        let w = Nil2Word::from_coords(self.e1.clone(), &coords[wedge_n + diag_n + mix_n..]);
        debug_assert_eq!(wedge_n + diag_n + mix_n + gen_n + self.e1.comm_pairs().len(), coords.len());
        SquadElement1 { hat, mix, w }
    }

    pub fn eq1_free(&self, x: &SquadElement1, y: &SquadElement1) -> bool {
        x == y
    }

    /// Structural commutator in degree 1: only the ⟨E1⟩^nil factor is
    /// noncommutative, so [x, y] = (0, 0, [w_x, w_y]).
    pub fn commutator1(&self, x: &SquadElement1, y: &SquadElement1) -> SquadElement1 {
        let mut z = self.zero1();
        z.w = x.w.commutator(&y.w).expect("same generator set");
        z
    }
}

/// Element of the degree-1 carrier: (t, m, w) with t ∈ ⊗̂²Z[E0],
/// m ∈ Z[E0×E1] and w ∈ ⟨E1⟩^nil.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquadElement1 {
    pub hat: HatSquareElem,
    pub mix: BTreeMap<(usize, usize), BigInt>,
    pub w: Nil2Word,
}

impl SquadElement1 {
    pub fn is_zero(&self) -> bool {
        self.hat.is_zero() && self.mix.is_empty() && self.w.is_identity()
    }

    pub fn display(&self, free: &FreeSquad) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (&(i, j), c) in self.hat.wedge_coeffs() {
            parts.push(format!("{}·({}⊗̂{})", c, free.e0().name(i), free.e0().name(j)));
        }
        for &i in self.hat.diag_support() {
            parts.push(format!("({0}⊗̂{0})", free.e0().name(i)));
        }
        for (&(i, l), c) in &self.mix {
            parts.push(format!("{}·({}⊗{})", c, free.e0().name(i), free.e1().name(l)));
        }
        if !self.w.is_identity() {
            parts.push(self.w.display());
        }
        parts.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn one_gen() -> FreeSquad {
        FreeSquad::new(GenSet::from_strs(&["γ"]), GenSet::from_strs(&[])).unwrap()
    }

    fn small() -> FreeSquad {
        FreeSquad::new(GenSet::from_strs(&["a", "b"]), GenSet::from_strs(&["u", "v"])).unwrap()
    }

    #[test]
    fn boundary_of_diagonal_hat_is_identity() {
        let f = one_gen();
        let g = f.e0_generator(0);
        let br = f.bracket(&g, &g);
        assert!(!br.is_zero());
        assert!(f.boundary(&br).is_identity());
        // Order two.
        assert!(f.add1(&br, &br).is_zero());
    }

    #[test]
    fn boundary_on_generator_pieces() {
        let f = small();
        // ∂(a⊗̂b) = [b, a]
        let a = f.e0_generator(0);
        let b = f.e0_generator(1);
        let br = f.bracket(&a, &b);
        let expect = b.commutator(&a).unwrap();
        assert_eq!(f.boundary(&br), expect);
        // ∂(0, (a,u), 0) = [∂u, a]
        let mut m = f.zero1();
        m.mix.insert((0, 0), BigInt::one());
        let du = f.boundary_symbol(0);
        let expect = du.commutator(&a).unwrap();
        assert_eq!(f.boundary(&m), expect);
        // ∂(0,0,u) = ∂u
        let u = f.e1_generator(0);
        assert_eq!(f.boundary(&u), du);
    }

    #[test]
    fn bracket_antisymmetry_law() {
        let f = small();
        let x = f.e0_generator(0).mul(&f.boundary_symbol(1).pow(&BigInt::from(-2))).unwrap();
        let y = f.boundary_symbol(0).mul(&f.e0_generator(1).pow(&BigInt::from(3))).unwrap();
        let b1 = f.bracket(&x, &y);
        let b2 = f.bracket(&y, &x);
        assert!(f.add1(&b1, &b2).is_zero());
    }

    #[test]
    fn first_law_on_random_words() {
        let f = small();
        let x = f.e0_generator(0).mul(&f.boundary_symbol(0)).unwrap();
        let y = f.e0_generator(1).inverse().mul(&f.boundary_symbol(1)).unwrap();
        // ∂⟨x, y⟩ = [y, x]
        let lhs = f.boundary(&f.bracket(&x, &y));
        let rhs = y.commutator(&x).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn second_law() {
        let f = small();
        // ⟨∂c1, ∂d1⟩ = [d1, c1] for degree-1 elements.
        let mut c1 = f.e1_generator(0);
        c1.mix.insert((1, 0), BigInt::from(2));
        let d1 = f.e1_generator(1);
        let lhs = f.bracket(&f.boundary(&c1), &f.boundary(&d1));
        let rhs = f.commutator1(&d1, &c1);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn action_is_additive_in_the_actor() {
        let f = small();
        let mut m = f.e1_generator(0);
        m.mix.insert((0, 1), BigInt::from(-1));
        let n1 = f.e0_generator(0);
        let n2 = f.boundary_symbol(1);
        let lhs = f.act(&f.act(&m, &n1), &n2);
        let rhs = f.act(&m, &n1.mul(&n2).unwrap());
        assert_eq!(lhs, rhs);
        // Central elements are fixed.
        let central = f.bracket(&n1, &n1);
        assert_eq!(f.act(&central, &n2), central);
        assert_eq!(f.act(&m, &f.zero0()), m);
    }

    #[test]
    fn coords_roundtrip() {
        let f = small();
        let mut x = f.e1_generator(0);
        x.mix.insert((1, 1), BigInt::from(7));
        let x = f.add1(&x, &f.bracket(&f.e0_generator(0), &f.e0_generator(0)));
        let c = f.coords1(&x);
        assert_eq!(f.from_coords1(&c), x);
    }
}

//! Square groups: the structure (M_e, M_ee, H, P) with its derived
//! operators, the two square groups carried by a 0-free presented module,
//! and the machine-checkable law suite.

use crate::exactlin::{Ambient, Lattice};
use crate::nil2::{GenSet, Nil2Word};
use crate::squad::{SquadElement1, SquadError, SquadPresentation};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::sync::Arc;

#[derive(Debug, thiserror::Error)]
pub enum SqgError {
    #[error(transparent)]
    Squad(#[from] SquadError),
    #[error(transparent)]
    Nil2(#[from] crate::nil2::Nil2Error),
    #[error("presentation is not 0-free: {0}")]
    NotZeroFree(String),
    #[error("square-group law `{law}` fails at {witness}")]
    LawFailure { law: String, witness: String },
}

/// A square group with free abelian ee-part, exposed through the operations
/// the tensor construction needs. The cross effect, the involution T = HP−1
/// and Δ(x) = (x|x)_H − H(x) + TH(x) are derived.
pub trait SquareGroup {
    type Elem: Clone + std::fmt::Debug;

    fn e_zero(&self) -> Self::Elem;
    fn e_add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn e_neg(&self, a: &Self::Elem) -> Self::Elem;
    fn e_eq(&self, a: &Self::Elem, b: &Self::Elem) -> bool;
    fn ee_rank(&self) -> usize;
    fn h(&self, x: &Self::Elem) -> Vec<BigInt>;
    fn p(&self, a: &[BigInt]) -> Self::Elem;
    /// Generators of the e-part (enough to verify laws on).
    fn e_gens(&self) -> Vec<Self::Elem>;

    fn e_sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.e_add(a, &self.e_neg(b))
    }

    fn e_scale(&self, a: &Self::Elem, k: &BigInt) -> Self::Elem {
        // Repeated doubling is unnecessary at the scales involved; the
        // callers only scale by small relator coefficients.
        let mut out = self.e_zero();
        let mut n = k.clone();
        let neg = n < BigInt::zero();
        if neg {
            n = -n;
        }
        while n > BigInt::zero() {
            out = self.e_add(&out, a);
            n -= 1;
        }
        if neg {
            self.e_neg(&out)
        } else {
            out
        }
    }

    /// (x|y)_H = H(x+y) − H(y) − H(x).
    fn cross(&self, x: &Self::Elem, y: &Self::Elem) -> Vec<BigInt> {
        let hxy = self.h(&self.e_add(x, y));
        let hy = self.h(y);
        let hx = self.h(x);
        hxy.iter().zip(hy.iter().zip(&hx)).map(|(a, (b, c))| a - b - c).collect()
    }

    /// T = HP − 1 on the ee-part.
    fn t(&self, a: &[BigInt]) -> Vec<BigInt> {
        let hp = self.h(&self.p(a));
        hp.iter().zip(a).map(|(x, y)| x - y).collect()
    }

    /// Δ(x) = (x|x)_H − H(x) + TH(x).
    fn delta(&self, x: &Self::Elem) -> Vec<BigInt> {
        let xx = self.cross(x, x);
        let hx = self.h(x);
        let thx = self.t(&hx);
        xx.iter().zip(hx.iter().zip(&thx)).map(|(a, (b, c))| a - b + c).collect()
    }

    fn commutator(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        let nx = self.e_neg(x);
        let ny = self.e_neg(y);
        self.e_add(&self.e_add(&self.e_add(&nx, &ny), x), y)
    }
}

fn ee_basis(rank: usize) -> Vec<Vec<BigInt>> {
    (0..rank)
        .map(|i| {
            let mut v = vec![BigInt::zero(); rank];
            v[i] = BigInt::one();
            v
        })
        .collect()
}

/// Verifies the four displayed square-group laws plus T² = 1 and the
/// additivity and P-invariance of Δ, on generators.
pub fn check_square_group_laws<M: SquareGroup>(m: &M, name: &str) -> Result<(), SqgError> {
    let gens = m.e_gens();
    let basis = ee_basis(m.ee_rank());
    let zero_ee = vec![BigInt::zero(); m.ee_rank()];
    for (ai, a) in basis.iter().enumerate() {
        let pa = m.p(a);
        for (xi, x) in gens.iter().enumerate() {
            if m.cross(&pa, x) != zero_ee {
                return Err(SqgError::LawFailure {
                    law: format!("{}: (P(a)|x)_H = 0", name),
                    witness: format!("a = ee[{}], x = gen[{}]", ai, xi),
                });
            }
            if m.cross(x, &pa) != zero_ee {
                return Err(SqgError::LawFailure {
                    law: format!("{}: (x|P(a))_H = 0", name),
                    witness: format!("a = ee[{}], x = gen[{}]", ai, xi),
                });
            }
        }
        // PHP(a) = P(a) + P(a)
        let php = m.p(&m.h(&pa));
        if !m.e_eq(&php, &m.e_add(&pa, &pa)) {
            return Err(SqgError::LawFailure {
                law: format!("{}: PHP = 2P", name),
                witness: format!("a = ee[{}]", ai),
            });
        }
        // T² = 1
        if m.t(&m.t(a)) != *a {
            return Err(SqgError::LawFailure {
                law: format!("{}: T² = 1", name),
                witness: format!("a = ee[{}]", ai),
            });
        }
    }
    for (xi, x) in gens.iter().enumerate() {
        for (yi, y) in gens.iter().enumerate() {
            // P(x|y)_H = [x, y]
            let lhs = m.p(&m.cross(x, y));
            let rhs = m.commutator(x, y);
            if !m.e_eq(&lhs, &rhs) {
                return Err(SqgError::LawFailure {
                    law: format!("{}: P(x|y)_H = [x,y]", name),
                    witness: format!("x = gen[{}], y = gen[{}]", xi, yi),
                });
            }
            // Δ additive on Coker P: Δ(x+y) = Δ(x) + Δ(y).
            let dxy = m.delta(&m.e_add(x, y));
            let sum: Vec<BigInt> =
                m.delta(x).iter().zip(m.delta(y)).map(|(u, v)| u + v).collect();
            if dxy != sum {
                return Err(SqgError::LawFailure {
                    law: format!("{}: Δ additive", name),
                    witness: format!("x = gen[{}], y = gen[{}]", xi, yi),
                });
            }
        }
        // Δ(x + P(a)) = Δ(x)
        for a in &basis {
            let shifted = m.delta(&m.e_add(x, &m.p(a)));
            if shifted != m.delta(x) {
                return Err(SqgError::LawFailure {
                    law: format!("{}: Δ constant on P-cosets", name),
                    witness: format!("x = gen[{}]", xi),
                });
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Z_nil[E]: the free nil-2 group with H(e) = 0 and (x|y)_H = y ⊗ x.
// ---------------------------------------------------------------------------

/// The square group Z_nil[E] (also the degree-0 square group of a 0-free
/// module). ee = Z[E] ⊗ Z[E] with coordinates (i, j) ↦ i·n + j.
#[derive(Clone)]
pub struct Znil {
    pub basis: Arc<GenSet>,
}

impl Znil {
    pub fn new(basis: Arc<GenSet>) -> Self {
        Znil { basis }
    }

    fn n(&self) -> usize {
        self.basis.len()
    }

    pub fn tensor_coord(&self, i: usize, j: usize) -> usize {
        i * self.n() + j
    }
}

impl SquareGroup for Znil {
    type Elem = Nil2Word;

    fn e_zero(&self) -> Nil2Word {
        Nil2Word::identity(self.basis.clone())
    }

    fn e_add(&self, a: &Nil2Word, b: &Nil2Word) -> Nil2Word {
        a.mul(b).expect("same basis")
    }

    fn e_neg(&self, a: &Nil2Word) -> Nil2Word {
        a.inverse()
    }

    fn e_eq(&self, a: &Nil2Word, b: &Nil2Word) -> bool {
        a == b
    }

    fn e_scale(&self, a: &Nil2Word, k: &BigInt) -> Nil2Word {
        a.pow(k)
    }

    fn ee_rank(&self) -> usize {
        self.n() * self.n()
    }

    /// Closed form on normal forms: H(∏ e_i^{a_i} ∏ K_ij^{c_ij}) =
    /// Σ C(a_i,2)(e_i⊗e_i) + Σ_{i<j} a_i a_j (e_j⊗e_i)
    /// + Σ_{i<j} c_ij (e_i⊗e_j − e_j⊗e_i).
    fn h(&self, x: &Nil2Word) -> Vec<BigInt> {
        let n = self.n();
        let mut out = vec![BigInt::zero(); n * n];
        let two = BigInt::from(2);
        for (&i, a) in x.gen_exponents() {
            out[self.tensor_coord(i, i)] += (a * (a - BigInt::one())).div_floor(&two);
        }
        let idx: Vec<usize> = x.gen_exponents().keys().copied().collect();
        for (p, &i) in idx.iter().enumerate() {
            for &j in &idx[p + 1..] {
                let prod = &x.gen_exponents()[&i] * &x.gen_exponents()[&j];
                out[self.tensor_coord(j, i)] += prod;
            }
        }
        for (&(i, j), c) in x.comm_exponents() {
            out[self.tensor_coord(i, j)] += c;
            out[self.tensor_coord(j, i)] -= c;
        }
        out
    }

    /// P(e_i ⊗ e_j) = [e_j, e_i].
    fn p(&self, a: &[BigInt]) -> Nil2Word {
        let n = self.n();
        assert_eq!(a.len(), n * n);
        let mut comm = BTreeMap::new();
        for i in 0..n {
            for j in i + 1..n {
                let v = &a[self.tensor_coord(i, j)] - &a[self.tensor_coord(j, i)];
                if !v.is_zero() {
                    comm.insert((i, j), v);
                }
            }
        }
        Nil2Word::from_parts(self.basis.clone(), BTreeMap::new(), comm)
    }

    fn e_gens(&self) -> Vec<Nil2Word> {
        (0..self.n()).map(|i| Nil2Word::generator(self.basis.clone(), i)).collect()
    }
}

// ---------------------------------------------------------------------------
// 0-free presentations and their two square groups.
// ---------------------------------------------------------------------------

/// A presentation whose degree-0 group is free nil-2 on E0 after eliminating
/// the formal boundary symbols: every degree-0 relator identifies one symbol
/// with a word, and the substitution collapses N0.
pub struct ZeroFree {
    pub presentation: Arc<SquadPresentation>,
    /// Substitution word over E0 for each boundary symbol.
    pub subst: Vec<Nil2Word>,
}

impl ZeroFree {
    /// Verifies 0-freeness and computes the substitution. The substitution
    /// word for ∂e1 is found by solving the symbol's class against the
    /// E0-span modulo N0 on both coordinate layers, and the collapse is
    /// certified by checking that the substitution kills every relator
    /// exactly in the free nil-2 group on E0.
    pub fn new(presentation: Arc<SquadPresentation>) -> Result<Self, SqgError> {
        let free = presentation.free();
        let g = free.g0().len();
        let e0n = free.e0().len();
        let e1n = free.e1().len();
        // Solve unit(∂e1) ≡ (E0 combination) modulo abelianized N0.
        let mut rows: Vec<Vec<BigInt>> = Vec::new();
        for i in 0..e0n {
            let mut r = vec![BigInt::zero(); g];
            r[i] = BigInt::one();
            rows.push(r);
        }
        let n_e0 = rows.len();
        for r in 0..presentation.closure0().abelian().basis().rows() {
            rows.push(presentation.closure0().abelian().basis().row(r));
        }
        let solver = Lattice::new(Ambient::free(g), rows);
        // Central layer: solve comm-defects against M0 plus the E0-pair span.
        let pairs = free.g0().comm_pairs();
        let mut crows: Vec<Vec<BigInt>> = Vec::new();
        let mut e0_pair_positions = Vec::new();
        for (k, &(i, j)) in pairs.iter().enumerate() {
            if i < e0n && j < e0n {
                let mut r = vec![BigInt::zero(); pairs.len()];
                r[k] = BigInt::one();
                e0_pair_positions.push(k);
                crows.push(r);
            }
        }
        let n_e0_pairs = crows.len();
        for r in 0..presentation.closure0().central().basis().rows() {
            crows.push(presentation.closure0().central().basis().row(r));
        }
        let csolver = Lattice::new(Ambient::free(pairs.len()), crows);

        let mut subst = Vec::new();
        for l in 0..e1n {
            let sym = free.boundary_symbol(l);
            let wit = solver
                .member(&sym.abelianize())
                .expect("dims")
                .ok_or_else(|| {
                    SqgError::NotZeroFree(format!(
                        "boundary symbol ∂{} is not expressible over E0",
                        free.e1().name(l)
                    ))
                })?;
            let mut coords = vec![BigInt::zero(); g];
            for (i, c) in wit[..n_e0].iter().enumerate() {
                coords[i] = c.clone();
            }
            coords.extend(vec![BigInt::zero(); pairs.len()]);
            let candidate = Nil2Word::from_coords(free.g0().clone(), &coords);
            // Correct the commutator layer: find an E0-pair adjustment c
            // with sym − (candidate + c) ∈ N0.
            let d = sym.mul(&candidate.inverse()).expect("gens");
            let defect = presentation
                .closure0()
                .central_defect(free, &d)
                .ok_or_else(|| SqgError::NotZeroFree("abelianized defect escapes N0".into()))?;
            let dwit = csolver.member(&defect).expect("dims").ok_or_else(|| {
                SqgError::NotZeroFree(format!(
                    "commutator defect of ∂{} escapes E0 pairs modulo N0",
                    free.e1().name(l)
                ))
            })?;
            let mut final_coords = candidate.coords();
            for (pos, k) in e0_pair_positions.iter().zip(&dwit[..n_e0_pairs]) {
                final_coords[g + pos] += k;
            }
            let word_g0 = Nil2Word::from_coords(free.g0().clone(), &final_coords);
            let word = restrict_to_e0(&word_g0, free.e0().clone(), e0n);
            subst.push(word);
        }
        let zf = ZeroFree { presentation, subst };
        // The substitution must kill every relator exactly.
        let pres = &zf.presentation;
        for (idx, r) in pres.r0().iter().enumerate() {
            if !zf.project0(r).is_identity() {
                return Err(SqgError::NotZeroFree(format!(
                    "degree-0 relator {} survives the boundary-symbol elimination",
                    idx
                )));
            }
        }
        Ok(zf)
    }

    pub fn basis(&self) -> Arc<GenSet> {
        self.presentation.free().e0().clone()
    }

    /// χ: the projection of the degree-0 carrier onto ⟨E0⟩^nil given by the
    /// boundary-symbol substitution. Exact normal forms; kills N0.
    pub fn project0(&self, w: &Nil2Word) -> Nil2Word {
        let free = self.presentation.free();
        let e0n = free.e0().len();
        let table: Vec<Nil2Word> = (0..free.g0().len())
            .map(|i| {
                if i < e0n {
                    Nil2Word::generator(free.e0().clone(), i)
                } else {
                    self.subst[i - e0n].clone()
                }
            })
            .collect();
        w.substitute(free.e0().clone(), |i| table[i].clone()).expect("same carrier")
    }

    pub fn sg0(&self) -> Znil {
        Znil::new(self.basis())
    }

    pub fn sg1(&self) -> Sg1<'_> {
        Sg1 { zf: self }
    }
}

fn restrict_to_e0(w: &Nil2Word, e0: Arc<GenSet>, e0n: usize) -> Nil2Word {
    let mut gen_exp = BTreeMap::new();
    for (&i, a) in w.gen_exponents() {
        assert!(i < e0n, "word touches a boundary symbol");
        gen_exp.insert(i, a.clone());
    }
    let mut comm_exp = BTreeMap::new();
    for (&(i, j), c) in w.comm_exponents() {
        assert!(i < e0n && j < e0n, "word touches a boundary symbol");
        comm_exp.insert((i, j), c.clone());
    }
    Nil2Word::from_parts(e0, gen_exp, comm_exp)
}

/// Degree-1 square group of a 0-free presentation: e-part the presented C1
/// (word problem modulo N1), ee-part Z[E0]⊗Z[E0], H = H0∘∂ and P = ω.
pub struct Sg1<'a> {
    pub zf: &'a ZeroFree,
}

impl<'a> Sg1<'a> {
    fn e0n(&self) -> usize {
        self.zf.presentation.free().e0().len()
    }

    fn znil0(&self) -> Znil {
        self.zf.sg0()
    }
}

impl<'a> SquareGroup for Sg1<'a> {
    type Elem = SquadElement1;

    fn e_zero(&self) -> SquadElement1 {
        self.zf.presentation.free().zero1()
    }

    fn e_add(&self, a: &SquadElement1, b: &SquadElement1) -> SquadElement1 {
        self.zf.presentation.free().add1(a, b)
    }

    fn e_neg(&self, a: &SquadElement1) -> SquadElement1 {
        self.zf.presentation.free().neg1(a)
    }

    fn e_eq(&self, a: &SquadElement1, b: &SquadElement1) -> bool {
        self.zf.presentation.eq1(a, b)
    }

    fn e_scale(&self, a: &SquadElement1, k: &BigInt) -> SquadElement1 {
        self.zf.presentation.free().pow1(a, k)
    }

    fn ee_rank(&self) -> usize {
        let n = self.e0n();
        n * n
    }

    fn h(&self, x: &SquadElement1) -> Vec<BigInt> {
        let b = self.zf.project0(&self.zf.presentation.free().boundary(x));
        self.znil0().h(&b)
    }

    /// P = ω: ee-basis element e_i ⊗ e_j maps to the bracket generator
    /// (e_i ⊗̂ e_j, 0, 0).
    fn p(&self, a: &[BigInt]) -> SquadElement1 {
        let free = self.zf.presentation.free();
        let n = self.e0n();
        let g = free.g0().len();
        let mut av = vec![BigInt::zero(); g];
        let mut out = free.zero1();
        for i in 0..n {
            for j in 0..n {
                let c = &a[i * n + j];
                if c.is_zero() {
                    continue;
                }
                av[i] = BigInt::one();
                let mut bv = vec![BigInt::zero(); g];
                bv[j] = BigInt::one();
                let br = free.bracket_ab(&av, &bv);
                out = free.add1(&out, &free.pow1(&br, c));
                av[i] = BigInt::zero();
            }
        }
        out
    }

    fn e_gens(&self) -> Vec<SquadElement1> {
        let free = self.zf.presentation.free();
        (0..free.e1().len()).map(|l| free.e1_generator(l)).collect()
    }
}

/// Builds the quadratic pair module carried by a 0-free presentation and
/// runs the full law suite on both square groups and on ∂.
pub fn sg_from_squad(presentation: Arc<SquadPresentation>) -> Result<ZeroFree, SqgError> {
    let zf = ZeroFree::new(presentation)?;
    check_square_group_laws(&zf.sg0(), "C0^sg")?;
    check_square_group_laws(&zf.sg1(), "C1^sg")?;
    // Pair-module structure: ∂ commutes with H and P, and the ee-parts
    // coincide by construction.
    let sg1 = zf.sg1();
    let sg0 = zf.sg0();
    let free = zf.presentation.free();
    for (l, x) in sg1.e_gens().iter().enumerate() {
        let bx = zf.project0(&free.boundary(x));
        if sg1.h(x) != sg0.h(&bx) {
            return Err(SqgError::LawFailure {
                law: "H1 = H0∂".into(),
                witness: format!("E1 generator {}", l),
            });
        }
    }
    let rank = sg1.ee_rank();
    for i in 0..rank {
        let mut a = vec![BigInt::zero(); rank];
        a[i] = BigInt::one();
        let lhs = zf.project0(&free.boundary(&sg1.p(&a)));
        let rhs = sg0.p(&a);
        if lhs != rhs {
            return Err(SqgError::LawFailure {
                law: "∂P1 = P0".into(),
                witness: format!("ee basis {}", i),
            });
        }
    }
    Ok(zf)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::squad::FreeSquad;

    #[test]
    fn znil_laws_hold() {
        let z = Znil::new(GenSet::from_strs(&["a", "b", "c"]));
        check_square_group_laws(&z, "Znil[3]").unwrap();
    }

    #[test]
    fn one_generator_module_is_znil_in_degree_zero() {
        let f = FreeSquad::new(GenSet::from_strs(&["γ"]), GenSet::from_strs(&[])).unwrap();
        let p = Arc::new(SquadPresentation::new(f, vec![], vec![]).unwrap());
        let zf = sg_from_squad(p).unwrap();
        assert_eq!(zf.basis().len(), 1);
        // H(e) = 0 and the cross effect is the swapped tensor.
        let sg0 = zf.sg0();
        let e = Nil2Word::generator(zf.basis(), 0);
        assert!(sg0.h(&e).iter().all(|x| x.is_zero()));
        let ee = sg0.cross(&e, &e);
        assert_eq!(ee, vec![BigInt::one()]);
    }

    #[test]
    fn cross_effect_on_basis_sums() {
        // H(e + e') has exactly the cross effect e'⊗e.
        let z = Znil::new(GenSet::from_strs(&["e", "f"]));
        let e = Nil2Word::generator(z.basis.clone(), 0);
        let f = Nil2Word::generator(z.basis.clone(), 1);
        let h = z.h(&z.e_add(&e, &f));
        let mut expect = vec![BigInt::zero(); 4];
        expect[z.tensor_coord(1, 0)] = BigInt::one();
        assert_eq!(h, expect);
    }

    #[test]
    fn non_zero_free_is_rejected()
    {
        let f = FreeSquad::new(GenSet::from_strs(&["a"]), GenSet::from_strs(&[])).unwrap();
        let two_a = f.e0_generator(0).pow(&BigInt::from(2));
        let p = Arc::new(SquadPresentation::new(f, vec![two_a], vec![]).unwrap());
        assert!(ZeroFree::new(p).is_err());
    }
}

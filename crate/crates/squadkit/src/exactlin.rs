//! Exact integer linear algebra: Hermite and Smith normal forms, lattice
//! membership with witnesses, and finitely presented abelian groups.
//!
//! Everything runs over arbitrary-precision integers; there is no modular or
//! floating-point shortcut anywhere. Ambient groups may carry per-coordinate
//! torsion moduli (modulus 0 marks a free coordinate), which is how the Z/2
//! summands of the degree-one carriers are represented.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

#[derive(Debug, thiserror::Error)]
pub enum LinError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self[(r, c)].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (r, c): (usize, usize)) -> &BigInt {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut BigInt {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        &mut self.data[r * self.cols + c]
    }
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows(cols: usize, rows: &[Vec<BigInt>]) -> Self {
        let mut m = IntMatrix::zero(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "row length mismatch");
            for (j, v) in row.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        m
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let big: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        IntMatrix::from_rows(cols, &big)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> Vec<BigInt> {
        (0..self.cols).map(|c| self[(r, c)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a * &other[(k, j)];
                    out[(i, j)] += prod;
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut out = IntMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let v = -&self[(r, c)];
            self[(r, c)] = v;
        }
    }

    /// row[dst] += q * row[src]
    fn add_multiple(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let add = q * &self[(src, c)];
            self[(dst, c)] += add;
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    /// col[dst] += q * col[src]
    fn add_multiple_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for r in 0..self.rows {
            let add = q * &self[(r, src)];
            self[(r, dst)] += add;
        }
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[(k, k)].is_zero() {
                let pivot = (k + 1..n).find(|&r| !m[(r, k)].is_zero());
                match pivot {
                    Some(r) => {
                        m.swap_rows(k, r);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &m[(k, k)] * &m[(i, j)] - &m[(i, k)] * &m[(k, j)];
                    let (q, r) = num.div_rem(&prev);
                    debug_assert!(r.is_zero());
                    m[(i, j)] = q;
                }
                m[(i, k)] = BigInt::zero();
            }
            prev = m[(k, k)].clone();
        }
        sign * m[(n - 1, n - 1)].clone()
    }

    pub fn is_unimodular(&self) -> bool {
        self.rows == self.cols && self.det().abs().is_one()
    }

    /// Inverse of a unimodular matrix. The HNF of a unimodular matrix is the
    /// identity, so the transform is the inverse.
    pub fn unimodular_inverse(&self) -> IntMatrix {
        let (h, u) = hnf(self);
        assert_eq!(h, IntMatrix::identity(self.rows), "matrix is not unimodular");
        u
    }
}

/// Row Hermite normal form. Returns (H, U) with H = U * m, U unimodular,
/// pivots positive, and entries above each pivot reduced into [0, pivot).
pub fn hnf(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.rows());
    let rows = m.rows();
    let cols = m.cols();
    let mut r = 0;
    for c in 0..cols {
        if r >= rows {
            break;
        }
        // Clear everything below position (r, c) by repeated remainder steps.
        loop {
            let mut pivot: Option<usize> = None;
            for i in r..rows {
                if h[(i, c)].is_zero() {
                    continue;
                }
                match pivot {
                    None => pivot = Some(i),
                    Some(p) => {
                        if h[(i, c)].abs() < h[(p, c)].abs() {
                            pivot = Some(i)
                        }
                    }
                }
            }
            let p = match pivot {
                None => break,
                Some(p) => p,
            };
            h.swap_rows(r, p);
            u.swap_rows(r, p);
            let mut done = true;
            for i in r + 1..rows {
                if h[(i, c)].is_zero() {
                    continue;
                }
                let q = -div_floor_big(&h[(i, c)], &h[(r, c)]);
                h.add_multiple(i, r, &q);
                u.add_multiple(i, r, &q);
                if !h[(i, c)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[(r, c)].is_zero() {
            continue;
        }
        if h[(r, c)].is_negative() {
            h.negate_row(r);
            u.negate_row(r);
        }
        // Reduce the entries above the pivot into [0, pivot).
        for i in 0..r {
            let q = -div_floor_big(&h[(i, c)], &h[(r, c)]);
            h.add_multiple(i, r, &q);
            u.add_multiple(i, r, &q);
        }
        r += 1;
    }
    (h, u)
}

fn div_floor_big(a: &BigInt, b: &BigInt) -> BigInt {
    a.div_floor(b)
}

/// Smith normal form decomposition: U * m * V = D.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithDecomposition {
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let n = self.d.rows().min(self.d.cols());
        (0..n).map(|i| self.d[(i, i)].clone()).filter(|x| !x.is_zero()).collect()
    }
}

/// Smith normal form with transforms: U·m·V = D diagonal, d_i | d_{i+1}.
pub fn snf(m: &IntMatrix) -> SmithDecomposition {
    let mut d = m.clone();
    let mut u = IntMatrix::identity(m.rows());
    let mut v = IntMatrix::identity(m.cols());
    let n = m.rows().min(m.cols());
    let mut t = 0;
    while t < n {
        // Find the nonzero entry of least magnitude in the trailing block.
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..d.rows() {
            for j in t..d.cols() {
                if d[(i, j)].is_zero() {
                    continue;
                }
                match pivot {
                    None => pivot = Some((i, j)),
                    Some((pi, pj)) => {
                        if d[(i, j)].abs() < d[(pi, pj)].abs() {
                            pivot = Some((i, j));
                        }
                    }
                }
            }
        }
        let (pi, pj) = match pivot {
            None => break,
            Some(p) => p,
        };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);

        let mut clean = true;
        for i in t + 1..d.rows() {
            if d[(i, t)].is_zero() {
                continue;
            }
            let q = -div_floor_big(&d[(i, t)], &d[(t, t)]);
            d.add_multiple(i, t, &q);
            u.add_multiple(i, t, &q);
            if !d[(i, t)].is_zero() {
                clean = false;
            }
        }
        for j in t + 1..d.cols() {
            if d[(t, j)].is_zero() {
                continue;
            }
            let q = -div_floor_big(&d[(t, j)], &d[(t, t)]);
            d.add_multiple_col(j, t, &q);
            v.add_multiple_col(j, t, &q);
            if !d[(t, j)].is_zero() {
                clean = false;
            }
        }
        if !clean {
            continue;
        }
        // Row and column are clear; enforce divisibility of later entries.
        let mut fixed = true;
        'outer: for i in t + 1..d.rows() {
            for j in t + 1..d.cols() {
                if !(&d[(i, j)] % &d[(t, t)]).is_zero() {
                    // Fold row i into the pivot position and restart the step.
                    d.add_multiple(t, i, &BigInt::one());
                    u.add_multiple(t, i, &BigInt::one());
                    fixed = false;
                    break 'outer;
                }
            }
        }
        if !fixed {
            continue;
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }
    SmithDecomposition { u, d, v }
}

/// Ambient finitely generated abelian group Z^r ⊕ ⊕ Z/m_i, described by
/// per-coordinate moduli (0 = free coordinate).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ambient {
    pub moduli: Vec<BigInt>,
}

impl Ambient {
    pub fn free(rank: usize) -> Self {
        Ambient { moduli: vec![BigInt::zero(); rank] }
    }

    pub fn with_moduli(moduli: Vec<BigInt>) -> Self {
        Ambient { moduli }
    }

    pub fn rank(&self) -> usize {
        self.moduli.len()
    }

    pub fn reduce(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.rank());
        v.iter()
            .zip(&self.moduli)
            .map(|(x, m)| if m.is_zero() { x.clone() } else { x.mod_floor(m) })
            .collect()
    }

    /// Rows m_i · e_i for the torsion coordinates.
    fn torsion_rows(&self) -> Vec<Vec<BigInt>> {
        let n = self.rank();
        let mut rows = Vec::new();
        for (i, m) in self.moduli.iter().enumerate() {
            if !m.is_zero() {
                let mut r = vec![BigInt::zero(); n];
                r[i] = m.clone();
                rows.push(r);
            }
        }
        rows
    }
}

/// Subgroup of an ambient group, generated by a finite list of vectors.
///
/// Internally the generators are extended by the torsion relations of the
/// ambient and reduced to Hermite normal form, so membership is a
/// deterministic echelon solve and equal subgroups have equal canonical bases.
#[derive(Clone, Debug)]
pub struct Lattice {
    ambient: Ambient,
    gens: IntMatrix,
    /// HNF of gens ++ torsion rows (zero rows trimmed).
    basis: IntMatrix,
    /// Full HNF including zero rows, and the unimodular transform:
    /// hnf_full = transform * (gens ++ torsion rows).
    hnf_full: IntMatrix,
    transform: IntMatrix,
}

impl Lattice {
    pub fn new(ambient: Ambient, gens: Vec<Vec<BigInt>>) -> Self {
        let n = ambient.rank();
        for g in &gens {
            assert_eq!(g.len(), n, "generator length mismatch");
        }
        let mut ext = gens.clone();
        ext.extend(ambient.torsion_rows());
        let g = IntMatrix::from_rows(n, &ext);
        let (h, u) = hnf(&g);
        let nonzero: Vec<Vec<BigInt>> =
            (0..h.rows()).filter(|&r| !h.row(r).iter().all(|x| x.is_zero())).map(|r| h.row(r)).collect();
        let basis = IntMatrix::from_rows(n, &nonzero);
        Lattice { ambient, gens: IntMatrix::from_rows(n, &gens), basis, hnf_full: h, transform: u }
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn generator_count(&self) -> usize {
        self.gens.rows()
    }

    pub fn generator(&self, i: usize) -> Vec<BigInt> {
        self.gens.row(i)
    }

    /// Canonical HNF basis (torsion folded in, zero rows dropped).
    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    /// Solves y · hnf_full = v exactly, exploiting the echelon shape.
    fn solve_hnf(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        let rows = self.hnf_full.rows();
        let cols = self.hnf_full.cols();
        let mut target = v.to_vec();
        let mut y = vec![BigInt::zero(); rows];
        for r in 0..rows {
            let pivot_col = (0..cols).find(|&c| !self.hnf_full[(r, c)].is_zero());
            let c = match pivot_col {
                None => continue,
                Some(c) => c,
            };
            let p = &self.hnf_full[(r, c)];
            let (q, rem) = target[c].div_rem(p);
            if !rem.is_zero() {
                return None;
            }
            if !q.is_zero() {
                for j in 0..cols {
                    let sub = &q * &self.hnf_full[(r, j)];
                    target[j] -= sub;
                }
                y[r] = q;
            }
        }
        if target.iter().all(|x| x.is_zero()) {
            Some(y)
        } else {
            None
        }
    }

    /// Membership test. On success the witness gives v as an integer
    /// combination of the construction generators (modulo ambient torsion).
    pub fn member(&self, v: &[BigInt]) -> Result<Option<Vec<BigInt>>, LinError> {
        if v.len() != self.ambient.rank() {
            return Err(LinError::DimensionMismatch { expected: self.ambient.rank(), got: v.len() });
        }
        let v = self.ambient.reduce(v);
        match self.solve_hnf(&v) {
            None => Ok(None),
            Some(y) => {
                // y is over the rows of hnf_full; pull back through the transform.
                let k = self.transform.rows();
                let mut x = vec![BigInt::zero(); k];
                for (r, yr) in y.iter().enumerate() {
                    if yr.is_zero() {
                        continue;
                    }
                    for j in 0..k {
                        let add = yr * &self.transform[(r, j)];
                        x[j] += add;
                    }
                }
                Ok(Some(x[..self.gens.rows()].to_vec()))
            }
        }
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        matches!(self.member(v), Ok(Some(_)))
    }

    /// Mutual containment of canonical bases.
    pub fn equals(&self, other: &Lattice) -> bool {
        self.ambient == other.ambient && self.basis == other.basis
    }

    /// Kernel of v ↦ v · mat as a sublattice of Z^rows(mat), where the image
    /// is taken in the given ambient (torsion-aware).
    pub fn kernel(mat: &IntMatrix, image_ambient: &Ambient) -> Vec<Vec<BigInt>> {
        // Stack the torsion rows under mat; kernel vectors of the stacked
        // matrix project onto kernel vectors of the torsion-aware map.
        let mut rows: Vec<Vec<BigInt>> = (0..mat.rows()).map(|r| mat.row(r)).collect();
        let torsion = image_ambient.torsion_rows();
        rows.extend(torsion.iter().cloned());
        let stacked = IntMatrix::from_rows(image_ambient.rank(), &rows);
        let (h, u) = hnf(&stacked);
        let mut out = Vec::new();
        for r in 0..h.rows() {
            if h.row(r).iter().all(|x| x.is_zero()) {
                let full = u.row(r);
                out.push(full[..mat.rows()].to_vec());
            }
        }
        out
    }

    /// Preimage lattice {x : x · mat ∈ target} ⊆ Z^rows(mat).
    ///
    /// x·mat lies in the target subgroup iff x·mat = y·gens + t·torsion for
    /// some integer y, t, i.e. iff (x, y, t) kills the stacked matrix
    /// [mat; -gens; -torsion]. The preimage is the projection of that kernel.
    pub fn preimage(mat: &IntMatrix, target: &Lattice) -> Vec<Vec<BigInt>> {
        let n = target.ambient.rank();
        assert_eq!(mat.cols(), n);
        let mut rows: Vec<Vec<BigInt>> = (0..mat.rows()).map(|r| mat.row(r)).collect();
        for r in 0..target.gens.rows() {
            rows.push(target.gens.row(r).iter().map(|x| -x).collect());
        }
        for t in target.ambient.torsion_rows() {
            rows.push(t.iter().map(|x| -x).collect());
        }
        let stacked = IntMatrix::from_rows(n, &rows);
        let ker = Lattice::kernel(&stacked, &Ambient::free(n));
        ker.into_iter().map(|k| k[..mat.rows()].to_vec()).collect()
    }
}

/// Finitely presented abelian group: quotient of an ambient by a lattice.
///
/// Elements are represented by ambient vectors; two vectors are equal iff
/// their Smith-coordinate reductions agree. Generator representatives give a
/// set-level section of the quotient map.
#[derive(Clone, Debug)]
pub struct FpAbelianGroup {
    generator_count: usize,
    relation_matrix: IntMatrix,
    smith: SmithDecomposition,
    v_inv: IntMatrix,
    /// Per-coordinate factor after the Smith change of basis: d_j for a
    /// torsion coordinate, 0 for a free coordinate.
    coord_factors: Vec<BigInt>,
    /// Coordinates whose factor is ≠ 1, in order.
    live_coords: Vec<usize>,
}

impl FpAbelianGroup {
    /// Quotient of the ambient by the subgroup generated by `relations`.
    pub fn quotient(ambient: &Ambient, relations: Vec<Vec<BigInt>>) -> Self {
        let n = ambient.rank();
        let mut rows = relations;
        rows.extend(ambient.torsion_rows());
        if rows.is_empty() {
            rows = Vec::new();
        }
        let rel = IntMatrix::from_rows(n, &rows);
        let smith = snf(&rel);
        let v_inv = smith.v.unimodular_inverse();
        let mut coord_factors = vec![BigInt::zero(); n];
        let diag = rel.rows().min(n);
        for j in 0..diag {
            coord_factors[j] = smith.d[(j, j)].clone();
        }
        let live_coords: Vec<usize> =
            (0..n).filter(|&j| !coord_factors[j].is_one()).collect();
        FpAbelianGroup {
            generator_count: n,
            relation_matrix: rel,
            smith,
            v_inv,
            coord_factors,
            live_coords,
        }
    }

    pub fn generator_count(&self) -> usize {
        self.generator_count
    }

    pub fn relation_matrix(&self) -> &IntMatrix {
        &self.relation_matrix
    }

    pub fn smith(&self) -> &SmithDecomposition {
        &self.smith
    }

    /// Invariant factors of the group: torsion factors ≠ 1 in divisibility
    /// order, then one 0 per free rank.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.live_coords.iter().map(|&j| self.coord_factors[j].clone()).collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.live_coords.is_empty()
    }

    pub fn free_rank(&self) -> usize {
        self.live_coords.iter().filter(|&&j| self.coord_factors[j].is_zero()).count()
    }

    pub fn order(&self) -> Option<BigInt> {
        if self.free_rank() > 0 {
            return None;
        }
        let mut o = BigInt::one();
        for &j in &self.live_coords {
            o *= &self.coord_factors[j];
        }
        Some(o)
    }

    /// Smith coordinates of an ambient vector over the live generators.
    pub fn class_coords(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.generator_count);
        let m = IntMatrix::from_rows(self.generator_count, &[v.to_vec()]);
        let w = m.mul(&self.smith.v);
        self.live_coords
            .iter()
            .map(|&j| {
                let f = &self.coord_factors[j];
                if f.is_zero() {
                    w[(0, j)].clone()
                } else {
                    w[(0, j)].mod_floor(f)
                }
            })
            .collect()
    }

    pub fn is_zero_class(&self, v: &[BigInt]) -> bool {
        self.class_coords(v).iter().all(|x| x.is_zero())
    }

    pub fn classes_equal(&self, a: &[BigInt], b: &[BigInt]) -> bool {
        let diff: Vec<BigInt> = a.iter().zip(b).map(|(x, y)| x - y).collect();
        self.is_zero_class(&diff)
    }

    /// Ambient representative of the j-th live generator.
    pub fn generator_rep(&self, j: usize) -> Vec<BigInt> {
        let coord = self.live_coords[j];
        self.v_inv.row(coord)
    }

    pub fn generator_reps(&self) -> Vec<Vec<BigInt>> {
        (0..self.live_coords.len()).map(|j| self.generator_rep(j)).collect()
    }

    /// Text form like "Z x Z/2" ("0" when trivial).
    pub fn describe(&self) -> String {
        let mut torsion = Vec::new();
        let mut free = 0usize;
        for &j in &self.live_coords {
            let f = &self.coord_factors[j];
            if f.is_zero() {
                free += 1;
            } else {
                torsion.push(format!("Z/{}", f));
            }
        }
        let mut parts = Vec::new();
        if free == 1 {
            parts.push("Z".to_string());
        } else if free > 1 {
            parts.push(format!("Z^{}", free));
        }
        parts.extend(torsion);
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" x ")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn hnf_zero_matrix_fixed() {
        let m = IntMatrix::from_i64(&[vec![0]]);
        let (h, u) = hnf(&m);
        assert_eq!(h, IntMatrix::from_i64(&[vec![0]]));
        assert_eq!(u, IntMatrix::identity(1));
    }

    #[test]
    fn hnf_identity_fixed() {
        let m = IntMatrix::identity(3);
        let (h, u) = hnf(&m);
        assert_eq!(h, IntMatrix::identity(3));
        assert_eq!(u, IntMatrix::identity(3));
    }

    #[test]
    fn hnf_derived_example() {
        // Row reduction by hand: [[2,4],[1,3]] → pivots (1,*),(0,2),
        // with the entry above the second pivot reduced into [0,2).
        let m = IntMatrix::from_i64(&[vec![2, 4], vec![1, 3]]);
        let (h, u) = hnf(&m);
        assert_eq!(h, IntMatrix::from_i64(&[vec![1, 1], vec![0, 2]]));
        assert_eq!(u.mul(&m), h);
        assert!(u.is_unimodular());
    }

    #[test]
    fn snf_trivial_cases() {
        let z = IntMatrix::zero(2, 3);
        let s = snf(&z);
        assert!(s.d.is_zero());
        let i = IntMatrix::identity(2);
        let s = snf(&i);
        assert_eq!(s.d, IntMatrix::identity(2));
    }

    #[test]
    fn snf_derived_example() {
        // Determinantal divisors: d1 = gcd(6,4) = 2, d1·d2 = |det| = 24.
        let m = IntMatrix::from_i64(&[vec![6, 0], vec![0, 4]]);
        let s = snf(&m);
        assert_eq!(s.invariant_factors(), big(&[2, 12]));
        assert_eq!(s.u.mul(&m).mul(&s.v), s.d);
        assert!(s.u.is_unimodular());
        assert!(s.v.is_unimodular());
    }

    #[test]
    fn lattice_member_trivial() {
        let amb = Ambient::free(2);
        let l = Lattice::new(amb, vec![big(&[2, 0])]);
        let w = l.member(&big(&[4, 0])).unwrap().unwrap();
        assert_eq!(w, big(&[2]));
        assert!(l.member(&big(&[1, 0])).unwrap().is_none());
    }

    #[test]
    fn lattice_member_torsion_derived() {
        // Ambient Z ⊕ Z/2, L = span{(1,1)}: (2,0) = 2·(1,1) mod (0,2).
        let amb = Ambient::with_moduli(vec![BigInt::zero(), BigInt::from(2)]);
        let l = Lattice::new(amb, vec![big(&[1, 1])]);
        let w = l.member(&big(&[2, 0])).unwrap();
        assert!(w.is_some());
        let w = w.unwrap();
        // Witness must reproduce the target modulo torsion.
        assert_eq!(w.len(), 1);
        assert_eq!(&w[0], &BigInt::from(2));
    }

    #[test]
    fn lattice_basis_rows_are_members() {
        let amb = Ambient::free(3);
        let l = Lattice::new(amb, vec![big(&[2, 4, 6]), big(&[1, 1, 1]), big(&[0, 0, 5])]);
        for r in 0..l.basis().rows() {
            assert!(l.contains(&l.basis().row(r)));
        }
        for i in 0..l.generator_count() {
            assert!(l.contains(&l.generator(i)));
        }
    }

    #[test]
    fn quotient_examples() {
        let q = FpAbelianGroup::quotient(&Ambient::free(2), vec![big(&[0, 1])]);
        assert_eq!(q.describe(), "Z");
        let q = FpAbelianGroup::quotient(&Ambient::free(1), vec![big(&[2])]);
        assert_eq!(q.describe(), "Z/2");
        let amb = Ambient::with_moduli(vec![BigInt::zero(), BigInt::from(2)]);
        let q = FpAbelianGroup::quotient(&amb, vec![big(&[1, 0])]);
        assert_eq!(q.describe(), "Z/2");
    }

    #[test]
    fn quotient_section_is_section() {
        let q = FpAbelianGroup::quotient(&Ambient::free(2), vec![big(&[2, 0]), big(&[0, 3])]);
        for (j, rep) in q.generator_reps().into_iter().enumerate() {
            let mut expected = vec![BigInt::zero(); q.invariant_factors().len()];
            expected[j] = BigInt::one();
            assert_eq!(q.class_coords(&rep), expected);
        }
    }

    #[test]
    fn kernel_basic() {
        // Kernel of (x, y) ↦ x + y on Z.
        let m = IntMatrix::from_i64(&[vec![1], vec![1]]);
        let ker = Lattice::kernel(&m, &Ambient::free(1));
        let l = Lattice::new(Ambient::free(2), ker);
        assert!(l.contains(&big(&[1, -1])));
        assert!(!l.contains(&big(&[1, 0])));
    }
}

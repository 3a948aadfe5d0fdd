//! Truncated nerve of the wS. construction.
//!
//! A cell of bidegree (m, n) is a string of n composable levelwise weak
//! equivalences between length-m cofibration flags. Quotient data is not
//! stored: it is resolved on demand through the category's cofiber table
//! (the declared choice function), and resolution failures surface as
//! errors. All simplicial identities are verified inside the truncation
//! window wherever both sides are defined.

use crate::waldcat::FiniteWaldhausenCategory;
use std::collections::BTreeMap;

#[derive(Debug, thiserror::Error)]
pub enum NerveError {
    #[error("unresolvable quotient choice: {0}")]
    Unresolvable(String),
    #[error("bisimplicial identity violated: {0}")]
    IdentityViolation(String),
    #[error("cell not found in the truncation window at ({0}, {1})")]
    CellNotFound(usize, usize),
}

/// Cofibration flag A1 ↣ A2 ↣ … ↣ Am (the leading * ↣ A1 is implicit).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Flag {
    pub objects: Vec<usize>,
    pub cofibs: Vec<usize>,
}

impl Flag {
    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }
}

/// Element of X_{m,n}: n+1 flags joined by n levelwise weak equivalences.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Cell {
    pub flags: Vec<Flag>,
    pub maps: Vec<Vec<usize>>,
}

impl Cell {
    pub fn m(&self) -> usize {
        self.flags[0].len()
    }

    pub fn n(&self) -> usize {
        self.maps.len()
    }

    fn point(n: usize) -> Cell {
        Cell {
            flags: vec![Flag { objects: vec![], cofibs: vec![] }; n + 1],
            maps: vec![vec![]; n],
        }
    }
}

/// Bisimplicial cells for total degree ≤ 3, with face and degeneracy
/// operators computed against the category tables.
pub struct TruncatedBisimplicialSet<'c> {
    pub category: &'c FiniteWaldhausenCategory,
    pub cells: BTreeMap<(usize, usize), Vec<Cell>>,
}

impl<'c> TruncatedBisimplicialSet<'c> {
    pub fn cells_at(&self, m: usize, n: usize) -> &[Cell] {
        self.cells.get(&(m, n)).map(|v| v.as_slice()).unwrap_or(&[])
    }

    /// Composite cofibration A_i ↣ A_j of a flag (1-based positions).
    fn composite(&self, flag: &Flag, i: usize, j: usize) -> Result<usize, NerveError> {
        assert!(1 <= i && i < j && j <= flag.len());
        let mut acc = flag.cofibs[i - 1];
        for k in i..j - 1 {
            acc = self
                .category
                .compose_opt(flag.cofibs[k], acc)
                .ok_or_else(|| NerveError::Unresolvable("missing composite".into()))?;
        }
        Ok(acc)
    }

    /// Chosen quotient morphism A_j ↠ A_j/A_1 for a flag (j ≥ 2).
    fn leading_quotient(&self, flag: &Flag, j: usize) -> Result<(usize, usize), NerveError> {
        let k = self.composite(flag, 1, j)?;
        let cf = self
            .category
            .cofiber(k)
            .map_err(|e| NerveError::Unresolvable(e.to_string()))?;
        Ok((cf.object, cf.quotient))
    }

    pub fn flag_face_h(&self, flag: &Flag, i: usize) -> Result<Flag, NerveError> {
        let m = flag.len();
        assert!(i <= m && m >= 1);
        if i == 0 {
            // Replace each A_j by A_j/A_1 using the choice function; the
            // connecting cofibrations are the induced maps on quotients.
            let mut objects = Vec::new();
            let mut quots = Vec::new();
            for j in 2..=m {
                let (q_obj, q) = self.leading_quotient(flag, j)?;
                objects.push(q_obj);
                quots.push(q);
            }
            let mut cofibs = Vec::new();
            for j in 0..quots.len().saturating_sub(1) {
                let u = self
                    .category
                    .induced_on_quotients(quots[j], quots[j + 1], flag.cofibs[j + 1])
                    .ok_or_else(|| {
                        NerveError::Unresolvable(format!(
                            "no induced map between quotients of {}",
                            self.category.morphisms[flag.cofibs[j + 1]].id
                        ))
                    })?;
                if !self.category.cofibrations.contains(&u) {
                    return Err(NerveError::Unresolvable(
                        "induced quotient map is not a cofibration".into(),
                    ));
                }
                cofibs.push(u);
            }
            return Ok(Flag { objects, cofibs });
        }
        let p = i - 1;
        let mut objects = flag.objects.clone();
        objects.remove(p);
        let cofibs = if m == 1 {
            vec![]
        } else if p == 0 {
            flag.cofibs[1..].to_vec()
        } else if p == m - 1 {
            flag.cofibs[..m - 2].to_vec()
        } else {
            let mut cs = flag.cofibs.clone();
            let merged = self
                .category
                .compose_opt(cs[p], cs[p - 1])
                .ok_or_else(|| NerveError::Unresolvable("missing composite".into()))?;
            cs[p - 1] = merged;
            cs.remove(p);
            cs
        };
        Ok(Flag { objects, cofibs })
    }

    /// Face of the component list of a levelwise map, matching flag_face_h.
    fn map_face_h(
        &self,
        src: &Flag,
        dst: &Flag,
        comps: &[usize],
        i: usize,
    ) -> Result<Vec<usize>, NerveError> {
        let m = src.len();
        if i == 0 {
            let mut out = Vec::new();
            for j in 2..=m {
                let (_, q_src) = self.leading_quotient(src, j)?;
                let (_, q_dst) = self.leading_quotient(dst, j)?;
                let u = self
                    .category
                    .induced_on_quotients(q_src, q_dst, comps[j - 1])
                    .ok_or_else(|| {
                        NerveError::Unresolvable("no induced map on quotients".into())
                    })?;
                out.push(u);
            }
            return Ok(out);
        }
        let mut out = comps.to_vec();
        out.remove(i - 1);
        Ok(out)
    }

    pub fn face_h(&self, cell: &Cell, i: usize) -> Result<Cell, NerveError> {
        let flags = cell
            .flags
            .iter()
            .map(|f| self.flag_face_h(f, i))
            .collect::<Result<Vec<_>, _>>()?;
        let mut maps = Vec::new();
        for (k, comps) in cell.maps.iter().enumerate() {
            maps.push(self.map_face_h(&cell.flags[k], &cell.flags[k + 1], comps, i)?);
        }
        Ok(Cell { flags, maps })
    }

    pub fn face_v(&self, cell: &Cell, j: usize) -> Result<Cell, NerveError> {
        let n = cell.n();
        assert!(j <= n && n >= 1);
        let mut flags = cell.flags.clone();
        let mut maps = cell.maps.clone();
        if j == 0 {
            flags.remove(0);
            maps.remove(0);
        } else if j == n {
            flags.pop();
            maps.pop();
        } else {
            let late = &cell.maps[j];
            let early = &cell.maps[j - 1];
            let mut comp = Vec::new();
            for (g, f) in late.iter().zip(early) {
                comp.push(
                    self.category
                        .compose_opt(*g, *f)
                        .ok_or_else(|| NerveError::Unresolvable("missing composite".into()))?,
                );
            }
            maps[j - 1] = comp;
            maps.remove(j);
            flags.remove(j);
        }
        Ok(Cell { flags, maps })
    }

    pub fn degeneracy_h(&self, cell: &Cell, i: usize) -> Cell {
        let m = cell.m();
        assert!(i <= m);
        let c = self.category;
        let flags: Vec<Flag> = cell
            .flags
            .iter()
            .map(|f| {
                let mut objects = f.objects.clone();
                let mut cofibs = f.cofibs.clone();
                if i == 0 {
                    if !objects.is_empty() {
                        cofibs.insert(0, c.from_zero(objects[0]));
                    }
                    objects.insert(0, c.zero);
                } else {
                    let p = i - 1;
                    objects.insert(p, f.objects[p]);
                    cofibs.insert(p, c.identity[f.objects[p]]);
                }
                Flag { objects, cofibs }
            })
            .collect();
        let maps: Vec<Vec<usize>> = cell
            .maps
            .iter()
            .map(|comps| {
                let mut out = comps.to_vec();
                if i == 0 {
                    out.insert(0, c.identity[c.zero]);
                } else {
                    out.insert(i - 1, comps[i - 1]);
                }
                out
            })
            .collect();
        Cell { flags, maps }
    }

    pub fn degeneracy_v(&self, cell: &Cell, j: usize) -> Cell {
        assert!(j <= cell.n());
        let mut flags = cell.flags.clone();
        let mut maps = cell.maps.clone();
        let dup = flags[j].clone();
        let idmap: Vec<usize> =
            dup.objects.iter().map(|&o| self.category.identity[o]).collect();
        flags.insert(j, dup);
        maps.insert(j, idmap);
        Cell { flags, maps }
    }

    /// A cell is degenerate when it is in the image of some degeneracy.
    pub fn is_degenerate(&self, cell: &Cell) -> bool {
        let (m, n) = (cell.m(), cell.n());
        for i in 0..m {
            if let Ok(face) = self.face_h(cell, i) {
                if &self.degeneracy_h(&face, i) == cell {
                    return true;
                }
            }
        }
        for j in 0..n {
            if let Ok(face) = self.face_v(cell, j) {
                if &self.degeneracy_v(&face, j) == cell {
                    return true;
                }
            }
        }
        false
    }

    /// Verifies the simplicial identities wherever both sides are defined in
    /// the window, plus horizontal reducedness.
    pub fn validate(&self) -> Vec<String> {
        let mut violations = Vec::new();
        for n in 0..=3usize {
            if self.cells_at(0, n).len() != 1 {
                violations.push(format!("X(0,{}) is not a single point", n));
            }
        }
        for (&(m, n), cells) in &self.cells {
            for cell in cells {
                // d_i d_j = d_{j-1} d_i (i < j), horizontally.
                for j in 1..=(if m >= 2 { m } else { 0 }) {
                    for i in 0..j {
                        let lhs = self
                            .face_h(cell, j)
                            .and_then(|y| self.face_h(&y, i));
                        let rhs = self
                            .face_h(cell, i)
                            .and_then(|y| self.face_h(&y, j - 1));
                        if let (Ok(a), Ok(b)) = (lhs, rhs) {
                            if a != b {
                                violations.push(format!(
                                    "horizontal dd identity fails at ({},{}) i={} j={}",
                                    m, n, i, j
                                ));
                            }
                        }
                    }
                }
                // Vertically.
                for j in 1..=(if n >= 2 { n } else { 0 }) {
                    for i in 0..j {
                        let lhs = self.face_v(cell, j).and_then(|y| self.face_v(&y, i));
                        let rhs = self.face_v(cell, i).and_then(|y| self.face_v(&y, j - 1));
                        if let (Ok(a), Ok(b)) = (lhs, rhs) {
                            if a != b {
                                violations.push(format!(
                                    "vertical dd identity fails at ({},{}) i={} j={}",
                                    m, n, i, j
                                ));
                            }
                        }
                    }
                }
                // Mixed faces commute.
                for i in 0..=m {
                    for j in 0..=n {
                        if m == 0 || n == 0 {
                            continue;
                        }
                        let lhs = self.face_h(cell, i).and_then(|y| self.face_v(&y, j));
                        let rhs = self.face_v(cell, j).and_then(|y| self.face_h(&y, i));
                        if let (Ok(a), Ok(b)) = (lhs, rhs) {
                            if a != b {
                                violations.push(format!(
                                    "mixed identity fails at ({},{}) i={} j={}",
                                    m, n, i, j
                                ));
                            }
                        }
                    }
                }
                // Degeneracy sections: d_i s_i = id = d_{i+1} s_i, in-window.
                if m + n < 3 {
                    for i in 0..=m {
                        let s = self.degeneracy_h(cell, i);
                        let a = self.face_h(&s, i).ok();
                        let b = self.face_h(&s, i + 1).ok();
                        if a.as_ref() != Some(cell) || b.as_ref() != Some(cell) {
                            violations.push(format!(
                                "horizontal degeneracy section fails at ({},{}) i={}",
                                m, n, i
                            ));
                        }
                    }
                    for j in 0..=n {
                        let s = self.degeneracy_v(cell, j);
                        let a = self.face_v(&s, j).ok();
                        let b = self.face_v(&s, j + 1).ok();
                        if a.as_ref() != Some(cell) || b.as_ref() != Some(cell) {
                            violations.push(format!(
                                "vertical degeneracy section fails at ({},{}) j={}",
                                m, n, j
                            ));
                        }
                    }
                }
            }
        }
        violations
    }
}

/// Enumerates the nerve of wS. for total degree ≤ 3 and verifies the
/// in-window simplicial identities.
pub fn nerve_ws(c: &FiniteWaldhausenCategory) -> Result<TruncatedBisimplicialSet<'_>, NerveError> {
    let mut cells: BTreeMap<(usize, usize), Vec<Cell>> = BTreeMap::new();
    for n in 0..=3usize {
        cells.insert((0, n), vec![Cell::point(n)]);
    }

    // Flags of each length.
    let flags1: Vec<Flag> =
        (0..c.objects.len()).map(|o| Flag { objects: vec![o], cofibs: vec![] }).collect();
    let mut flags2 = Vec::new();
    for (m, morph) in c.morphisms.iter().enumerate() {
        if c.cofibrations.contains(&m) {
            flags2.push(Flag { objects: vec![morph.src, morph.dst], cofibs: vec![m] });
        }
    }
    let mut flags3 = Vec::new();
    for f in &flags2 {
        for (m2, morph2) in c.morphisms.iter().enumerate() {
            if c.cofibrations.contains(&m2) && morph2.src == f.objects[1] {
                flags3.push(Flag {
                    objects: vec![f.objects[0], f.objects[1], morph2.dst],
                    cofibs: vec![f.cofibs[0], m2],
                });
            }
        }
    }

    let cell0 = |f: &Flag| Cell { flags: vec![f.clone()], maps: vec![] };
    cells.insert((1, 0), flags1.iter().map(cell0).collect());
    cells.insert((2, 0), flags2.iter().map(cell0).collect());
    cells.insert((3, 0), flags3.iter().map(cell0).collect());

    // Levelwise weak equivalences between flags.
    let we_components = |src: &Flag, dst: &Flag| -> Vec<Vec<usize>> {
        // All choices of componentwise weak equivalences commuting with the
        // flag cofibrations.
        let m = src.len();
        let mut partial: Vec<Vec<usize>> = vec![vec![]];
        for level in 0..m {
            let mut next = Vec::new();
            for p in &partial {
                for (w, morph) in c.morphisms.iter().enumerate() {
                    if !c.weak_equivalences.contains(&w)
                        || morph.src != src.objects[level]
                        || morph.dst != dst.objects[level]
                    {
                        continue;
                    }
                    if level > 0 {
                        let prev = p[level - 1];
                        let lhs = c.compose_opt(w, src.cofibs[level - 1]);
                        let rhs = c.compose_opt(dst.cofibs[level - 1], prev);
                        if lhs.is_none() || lhs != rhs {
                            continue;
                        }
                    }
                    let mut q = p.clone();
                    q.push(w);
                    next.push(q);
                }
            }
            partial = next;
        }
        partial
    };

    let mut x11 = Vec::new();
    for f in &flags1 {
        for g in &flags1 {
            for comps in we_components(f, g) {
                x11.push(Cell { flags: vec![f.clone(), g.clone()], maps: vec![comps] });
            }
        }
    }
    cells.insert((1, 1), x11.clone());

    let mut x21 = Vec::new();
    for f in &flags2 {
        for g in &flags2 {
            for comps in we_components(f, g) {
                // The induced map on quotients must exist and be a weak
                // equivalence for the string to be a morphism of wS_2.
                let tmp = TruncatedBisimplicialSet { category: c, cells: BTreeMap::new() };
                let (_, qf) = tmp.leading_quotient(f, 2)?;
                let (_, qg) = tmp.leading_quotient(g, 2)?;
                match c.induced_on_quotients(qf, qg, comps[1]) {
                    Some(u) if c.weak_equivalences.contains(&u) => {}
                    _ => continue,
                }
                x21.push(Cell { flags: vec![f.clone(), g.clone()], maps: vec![comps] });
            }
        }
    }
    cells.insert((2, 1), x21);

    let mut x12 = Vec::new();
    for cell in &x11 {
        for cell2 in &x11 {
            if cell2.flags[0] != cell.flags[1] {
                continue;
            }
            x12.push(Cell {
                flags: vec![cell.flags[0].clone(), cell.flags[1].clone(), cell2.flags[1].clone()],
                maps: vec![cell.maps[0].clone(), cell2.maps[0].clone()],
            });
        }
    }
    cells.insert((1, 2), x12);

    let x = TruncatedBisimplicialSet { category: c, cells };
    let violations = x.validate();
    if !violations.is_empty() {
        return Err(NerveError::IdentityViolation(violations.join("; ")));
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn trivial_nerve_is_all_points() {
        let c = fixtures::trivial_category();
        let x = nerve_ws(&c).unwrap();
        for (&(m, n), cells) in &x.cells {
            assert_eq!(cells.len(), 1, "X({},{})", m, n);
        }
    }

    #[test]
    fn pointed_sets_cell_counts() {
        let c = fixtures::pointed_sets(2);
        let x = nerve_ws(&c).unwrap();
        // X_{1,0} = objects, X_{1,1} = weak equivalences,
        // X_{2,0} = cofibrations.
        assert_eq!(x.cells_at(1, 0).len(), 2);
        assert_eq!(x.cells_at(1, 1).len(), 2);
        assert_eq!(x.cells_at(2, 0).len(), 3);
        // Exhaustive enumeration oracle for X_{2,0} at n = 2: injections
        // S1→S1, S1→S2, S2→S2 with chosen quotients: exactly 3.
        let mut count = 0;
        for m in 0..c.morphisms.len() {
            if c.cofibrations.contains(&m) {
                count += 1;
            }
        }
        assert_eq!(count, 3);
    }

    #[test]
    fn degeneracy_detection() {
        let c = fixtures::pointed_sets(2);
        let x = nerve_ws(&c).unwrap();
        let zero_flag = Cell { flags: vec![Flag { objects: vec![c.zero], cofibs: vec![] }], maps: vec![] };
        assert!(x.is_degenerate(&zero_flag));
        let s2 = c.object_index("S2").unwrap();
        let obj_flag = Cell { flags: vec![Flag { objects: vec![s2], cofibs: vec![] }], maps: vec![] };
        assert!(!x.is_degenerate(&obj_flag));
        // Identity weak equivalence is vertically degenerate.
        let idcell = Cell {
            flags: vec![
                Flag { objects: vec![s2], cofibs: vec![] },
                Flag { objects: vec![s2], cofibs: vec![] },
            ],
            maps: vec![vec![c.identity[s2]]],
        };
        assert!(x.is_degenerate(&idcell));
    }
}

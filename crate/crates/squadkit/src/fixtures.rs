//! Generated example categories, functors, transformations and pairings used
//! by the test suites and the documentation examples.
//!
//! Two families are provided: pointed finite sets of size ≤ N (cofibrations
//! the injections, weak equivalences the bijections, wedge as coproduct) and
//! F2 vector spaces of dimension ≤ N with all linear maps (cofibrations the
//! injections, weak equivalences the isomorphisms, direct sum as coproduct).
//! Coproduct tables only contain pairs whose wedge stays within the size
//! bound; the categories are otherwise total.

use crate::waldcat::{
    CategoryFile, CofiberFile, CoproductFile, FiniteWaldhausenCategory, MorphismFile,
};
use std::collections::BTreeMap;

fn build(file: CategoryFile) -> FiniteWaldhausenCategory {
    FiniteWaldhausenCategory::from_file(&file).expect("fixture file is well-formed")
}

/// The one-object category {*}.
pub fn trivial_category() -> FiniteWaldhausenCategory {
    build(CategoryFile {
        objects: vec!["*".into()],
        zero: "*".into(),
        morphisms: vec![MorphismFile { id: "id*".into(), src: "*".into(), dst: "*".into() }],
        identity: [("*".to_string(), "id*".to_string())].into_iter().collect(),
        compose: vec![("id*".into(), "id*".into(), "id*".into())],
        cofibrations: vec!["id*".into()],
        weak_equivalences: vec!["id*".into()],
        coproducts: vec![],
        cofibers: vec![CofiberFile {
            cofibration: "id*".into(),
            quotient_object: "*".into(),
            quotient_morphism: "id*".into(),
        }],
    })
}

// ---------------------------------------------------------------------------
// Pointed sets S1, ..., SN (Sk has k elements, basepoint 0).
//
// A pointed map Sa → Sb is encoded by the images of the points 1..a-1 as a
// digit string; morphism ids look like "m3>2:10" (S3 → S2, 1↦1, 2↦0).
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct PMap {
    src: usize,
    dst: usize,
    img: Vec<usize>,
}

impl PMap {
    fn id_string(&self) -> String {
        let digits: String = self.img.iter().map(|d| d.to_string()).collect();
        format!("m{}>{}:{}", self.src, self.dst, digits)
    }

    fn identity(n: usize) -> PMap {
        PMap { src: n, dst: n, img: (1..n).collect() }
    }

    fn compose(late: &PMap, early: &PMap) -> PMap {
        assert_eq!(early.dst, late.src);
        let img = early
            .img
            .iter()
            .map(|&x| if x == 0 { 0 } else { late.img[x - 1] })
            .collect();
        PMap { src: early.src, dst: late.dst, img }
    }

    fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.dst];
        for &x in &self.img {
            if x == 0 || seen[x] {
                return false;
            }
            seen[x] = true;
        }
        true
    }

    fn is_bijective(&self) -> bool {
        self.src == self.dst && self.is_injective()
    }
}

fn all_pmaps(a: usize, b: usize) -> Vec<PMap> {
    // All functions {1..a-1} → {0..b-1}, basepoint fixed.
    let k = a - 1;
    let mut out = Vec::new();
    let mut img = vec![0usize; k];
    loop {
        out.push(PMap { src: a, dst: b, img: img.clone() });
        let mut pos = 0;
        loop {
            if pos == k {
                return out;
            }
            img[pos] += 1;
            if img[pos] < b {
                break;
            }
            img[pos] = 0;
            pos += 1;
        }
    }
}

/// The category of pointed sets of size ≤ n with all pointed maps.
pub fn pointed_sets(n: usize) -> FiniteWaldhausenCategory {
    assert!(n >= 1);
    let obj_name = |k: usize| format!("S{}", k);
    let mut morphs: Vec<PMap> = Vec::new();
    for a in 1..=n {
        for b in 1..=n {
            morphs.extend(all_pmaps(a, b));
        }
    }
    let index: BTreeMap<String, usize> =
        morphs.iter().enumerate().map(|(i, m)| (m.id_string(), i)).collect();
    let mut compose = Vec::new();
    for f in &morphs {
        for g in &morphs {
            if g.src == f.dst {
                let gf = PMap::compose(g, f);
                compose.push((g.id_string(), f.id_string(), gf.id_string()));
            }
        }
    }
    let cofibrations: Vec<String> =
        morphs.iter().filter(|m| m.is_injective()).map(|m| m.id_string()).collect();
    let weak_equivalences: Vec<String> =
        morphs.iter().filter(|m| m.is_bijective()).map(|m| m.id_string()).collect();

    // Chosen cofiber of an injection: collapse the image, list the leftover
    // points of the target in increasing order.
    let mut cofibers = Vec::new();
    for m in morphs.iter().filter(|m| m.is_injective()) {
        let hit: Vec<bool> = {
            let mut h = vec![false; m.dst];
            h[0] = true;
            for &x in &m.img {
                h[x] = true;
            }
            h
        };
        let leftover: Vec<usize> = (0..m.dst).filter(|&x| !hit[x]).collect();
        let qsize = leftover.len() + 1;
        let mut rank = vec![0usize; m.dst];
        for (r, &x) in leftover.iter().enumerate() {
            rank[x] = r + 1;
        }
        let q = PMap { src: m.dst, dst: qsize, img: (1..m.dst).map(|x| rank[x]).collect() };
        assert!(index.contains_key(&q.id_string()));
        cofibers.push(CofiberFile {
            cofibration: m.id_string(),
            quotient_object: obj_name(qsize),
            quotient_morphism: q.id_string(),
        });
    }

    // Wedge Sa ∨ Sb = S(a+b-1) where it fits: first block, then second.
    let mut coproducts = Vec::new();
    for a in 1..=n {
        for b in a..=n {
            if a == 1 || b == 1 {
                continue; // pairs with the zero object are synthesized
            }
            let c = a + b - 1;
            if c > n {
                continue;
            }
            let i1 = PMap { src: a, dst: c, img: (1..a).collect() };
            let i2 = PMap { src: b, dst: c, img: (1..b).map(|x| x + a - 1).collect() };
            let p1 = PMap {
                src: c,
                dst: a,
                img: (1..c).map(|x| if x < a { x } else { 0 }).collect(),
            };
            let p2 = PMap {
                src: c,
                dst: b,
                img: (1..c).map(|x| if x >= a { x - a + 1 } else { 0 }).collect(),
            };
            coproducts.push(CoproductFile {
                pair: (obj_name(a), obj_name(b)),
                object: obj_name(c),
                i1: i1.id_string(),
                i2: i2.id_string(),
                p1: p1.id_string(),
                p2: p2.id_string(),
            });
        }
    }

    build(CategoryFile {
        objects: (1..=n).map(obj_name).collect(),
        zero: obj_name(1),
        morphisms: morphs
            .iter()
            .map(|m| MorphismFile {
                id: m.id_string(),
                src: obj_name(m.src),
                dst: obj_name(m.dst),
            })
            .collect(),
        identity: (1..=n).map(|k| (obj_name(k), PMap::identity(k).id_string())).collect(),
        compose,
        cofibrations,
        weak_equivalences,
        coproducts,
        cofibers,
    })
}

/// The smash-product pairing (S, T) ↦ S ∧ T between pointed-set categories
/// of sizes ≤ nc, ≤ nd, landing in size ≤ ne (which must accommodate all
/// products).
pub fn smash_pairing(nc: usize, nd: usize) -> crate::sqg::PairingFile {
    let obj_name = |k: usize| format!("S{}", k);
    let smash_size = |a: usize, b: usize| (a - 1) * (b - 1) + 1;
    // Nonbase points of Sa∧Sb are pairs (x, y), x ∈ 1..a-1, y ∈ 1..b-1,
    // numbered lexicographically.
    let pt = |x: usize, y: usize, cols: usize| -> usize {
        if x == 0 || y == 0 {
            0
        } else {
            (x - 1) * cols + (y - 1) + 1
        }
    };
    let mut objects = Vec::new();
    for a in 1..=nc {
        for b in 1..=nd {
            objects.push((obj_name(a), obj_name(b), obj_name(smash_size(a, b))));
        }
    }
    let mut morphisms = Vec::new();
    for a in 1..=nc {
        for b in 1..=nc {
            for f in all_pmaps(a, b) {
                for c in 1..=nd {
                    for d in 1..=nd {
                        for g in all_pmaps(c, d) {
                            let img: Vec<usize> = (1..smash_size(a, c))
                                .map(|p| {
                                    let x = (p - 1) / (c - 1) + 1;
                                    let y = (p - 1) % (c - 1) + 1;
                                    let fx = f.img[x - 1];
                                    let gy = g.img[y - 1];
                                    pt(fx, gy, d - 1)
                                })
                                .collect();
                            let fg =
                                PMap { src: smash_size(a, c), dst: smash_size(b, d), img };
                            morphisms.push((f.id_string(), g.id_string(), fg.id_string()));
                        }
                    }
                }
            }
        }
    }
    crate::sqg::PairingFile { objects, morphisms }
}

// ---------------------------------------------------------------------------
// F2 vector spaces V0, ..., VN with all linear maps.
//
// A map Va → Vb is a b×a matrix over F2, encoded row-major as a bit string:
// "v2>1:10" is the 1×2 matrix (1 0).
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct FMap {
    src: usize,
    dst: usize,
    bits: Vec<u8>, // dst*src entries, row-major
}

impl FMap {
    fn id_string(&self) -> String {
        let digits: String = self.bits.iter().map(|d| d.to_string()).collect();
        format!("v{}>{}:{}", self.src, self.dst, digits)
    }

    fn identity(n: usize) -> FMap {
        let mut bits = vec![0u8; n * n];
        for i in 0..n {
            bits[i * n + i] = 1;
        }
        FMap { src: n, dst: n, bits }
    }

    fn at(&self, r: usize, c: usize) -> u8 {
        self.bits[r * self.src + c]
    }

    fn compose(late: &FMap, early: &FMap) -> FMap {
        assert_eq!(early.dst, late.src);
        let mut bits = vec![0u8; late.dst * early.src];
        for r in 0..late.dst {
            for c in 0..early.src {
                let mut acc = 0u8;
                for k in 0..late.src {
                    acc ^= late.at(r, k) & early.at(k, c);
                }
                bits[r * early.src + c] = acc;
            }
        }
        FMap { src: early.src, dst: late.dst, bits }
    }

    fn rank(&self) -> usize {
        let mut rows: Vec<Vec<u8>> = (0..self.dst)
            .map(|r| (0..self.src).map(|c| self.at(r, c)).collect())
            .collect();
        let mut rank = 0;
        for c in 0..self.src {
            if let Some(p) = (rank..rows.len()).find(|&r| rows[r][c] == 1) {
                rows.swap(rank, p);
                for r in 0..rows.len() {
                    if r != rank && rows[r][c] == 1 {
                        let pr = rows[rank].clone();
                        for (x, y) in rows[r].iter_mut().zip(&pr) {
                            *x ^= y;
                        }
                    }
                }
                rank += 1;
            }
        }
        rank
    }

    fn is_injective(&self) -> bool {
        self.rank() == self.src
    }

    fn is_iso(&self) -> bool {
        self.src == self.dst && self.is_injective()
    }

    /// Canonical cokernel: the reduced-echelon basis of the left null space
    /// {x : x·M = 0}, as rows of a (dst − rank)×dst matrix.
    fn canonical_cokernel(&self) -> FMap {
        let n = self.dst;
        let mut rows: Vec<Vec<u8>> = (0..n)
            .map(|r| {
                let mut v: Vec<u8> = (0..self.src).map(|c| self.at(r, c)).collect();
                let mut id = vec![0u8; n];
                id[r] = 1;
                v.extend(id);
                v
            })
            .collect();
        let mut pivot_row = 0;
        for c in 0..self.src {
            if let Some(p) = (pivot_row..n).find(|&r| rows[r][c] == 1) {
                rows.swap(pivot_row, p);
                for r in 0..n {
                    if r != pivot_row && rows[r][c] == 1 {
                        let pr = rows[pivot_row].clone();
                        for (x, y) in rows[r].iter_mut().zip(&pr) {
                            *x ^= y;
                        }
                    }
                }
                pivot_row += 1;
            }
        }
        let mut null: Vec<Vec<u8>> =
            rows[pivot_row..].iter().map(|r| r[self.src..].to_vec()).collect();
        let mut rank = 0;
        for c in 0..n {
            if let Some(p) = (rank..null.len()).find(|&r| null[r][c] == 1) {
                null.swap(rank, p);
                for r in 0..null.len() {
                    if r != rank && null[r][c] == 1 {
                        let pr = null[rank].clone();
                        for (x, y) in null[r].iter_mut().zip(&pr) {
                            *x ^= y;
                        }
                    }
                }
                rank += 1;
            }
        }
        null.truncate(rank);
        let bits = null.concat();
        FMap { src: n, dst: rank, bits }
    }
}

fn all_fmaps(a: usize, b: usize) -> Vec<FMap> {
    let n = a * b;
    (0..(1usize << n))
        .map(|mask| FMap {
            src: a,
            dst: b,
            bits: (0..n).map(|k| ((mask >> k) & 1) as u8).collect(),
        })
        .collect()
}

/// The additive fixture: F2 vector spaces of dimension ≤ n.
pub fn f2_vector_spaces(n: usize) -> FiniteWaldhausenCategory {
    let obj_name = |k: usize| format!("V{}", k);
    let mut morphs: Vec<FMap> = Vec::new();
    for a in 0..=n {
        for b in 0..=n {
            morphs.extend(all_fmaps(a, b));
        }
    }
    let mut compose = Vec::new();
    for f in &morphs {
        for g in &morphs {
            if g.src == f.dst {
                compose.push((g.id_string(), f.id_string(), FMap::compose(g, f).id_string()));
            }
        }
    }
    let cofibrations: Vec<String> =
        morphs.iter().filter(|m| m.is_injective()).map(|m| m.id_string()).collect();
    let weak_equivalences: Vec<String> =
        morphs.iter().filter(|m| m.is_iso()).map(|m| m.id_string()).collect();
    let mut cofibers = Vec::new();
    for m in morphs.iter().filter(|m| m.is_injective()) {
        let q = m.canonical_cokernel();
        cofibers.push(CofiberFile {
            cofibration: m.id_string(),
            quotient_object: obj_name(q.dst),
            quotient_morphism: q.id_string(),
        });
    }
    let mut coproducts = Vec::new();
    for a in 1..=n {
        for b in a..=n {
            let c = a + b;
            if c > n {
                continue;
            }
            let mut i1 = FMap { src: a, dst: c, bits: vec![0; a * c] };
            for k in 0..a {
                i1.bits[k * a + k] = 1;
            }
            let mut i2 = FMap { src: b, dst: c, bits: vec![0; b * c] };
            for k in 0..b {
                i2.bits[(a + k) * b + k] = 1;
            }
            let mut p1 = FMap { src: c, dst: a, bits: vec![0; a * c] };
            for k in 0..a {
                p1.bits[k * c + k] = 1;
            }
            let mut p2 = FMap { src: c, dst: b, bits: vec![0; b * c] };
            for k in 0..b {
                p2.bits[k * c + a + k] = 1;
            }
            coproducts.push(CoproductFile {
                pair: (obj_name(a), obj_name(b)),
                object: obj_name(c),
                i1: i1.id_string(),
                i2: i2.id_string(),
                p1: p1.id_string(),
                p2: p2.id_string(),
            });
        }
    }
    build(CategoryFile {
        objects: (0..=n).map(obj_name).collect(),
        zero: obj_name(0),
        morphisms: morphs
            .iter()
            .map(|m| MorphismFile {
                id: m.id_string(),
                src: obj_name(m.src),
                dst: obj_name(m.dst),
            })
            .collect(),
        identity: (0..=n).map(|k| (obj_name(k), FMap::identity(k).id_string())).collect(),
        compose,
        cofibrations,
        weak_equivalences,
        coproducts,
        cofibers,
    })
}

// ---------------------------------------------------------------------------
// A tiny category with two isomorphic objects, exercising induced homotopies:
// natural transformations between the identity and the object-swap functor.
// ---------------------------------------------------------------------------

/// Objects *, Y, Y' with mutually inverse isomorphisms u: Y → Y', u': Y' → Y.
pub fn iso_pair() -> FiniteWaldhausenCategory {
    let objects = vec!["*".to_string(), "Y".to_string(), "Y'".to_string()];
    let names = [
        ("id*", "*", "*"),
        ("idY", "Y", "Y"),
        ("idY'", "Y'", "Y'"),
        ("u", "Y", "Y'"),
        ("u'", "Y'", "Y"),
        ("0>Y", "*", "Y"),
        ("0>Y'", "*", "Y'"),
        ("Y>0", "Y", "*"),
        ("Y'>0", "Y'", "*"),
        ("zYY", "Y", "Y"),
        ("zYY'", "Y", "Y'"),
        ("zY'Y", "Y'", "Y"),
        ("zY'Y'", "Y'", "Y'"),
    ];
    let morphisms: Vec<MorphismFile> = names
        .iter()
        .map(|(id, s, d)| MorphismFile { id: (*id).into(), src: (*s).into(), dst: (*d).into() })
        .collect();
    let obj_of = |s: &str| -> usize {
        match s {
            "*" => 0,
            "Y" => 1,
            _ => 2,
        }
    };
    // Composite of f then g, computed semantically: identities are neutral,
    // u/u' compose to identities, and anything factoring through * is the
    // appropriate zero morphism.
    let compose_ids = |g: &str, f: &str| -> String {
        let (fs, _fd) = {
            let m = names.iter().find(|(id, ..)| *id == f).unwrap();
            (obj_of(m.1), obj_of(m.2))
        };
        let (_gs, gd) = {
            let m = names.iter().find(|(id, ..)| *id == g).unwrap();
            (obj_of(m.1), obj_of(m.2))
        };
        if g.starts_with("id") {
            return f.to_string();
        }
        if f.starts_with("id") {
            return g.to_string();
        }
        let zeroish = |x: &str| x.starts_with('z') || x.contains('>');
        if !zeroish(g) && !zeroish(f) {
            // u'∘u = idY, u∘u' = idY'
            return if f == "u" { "idY".into() } else { "idY'".into() };
        }
        let zero_name = |s: usize, d: usize| -> String {
            match (s, d) {
                (0, 0) => "id*".into(),
                (0, 1) => "0>Y".into(),
                (0, 2) => "0>Y'".into(),
                (1, 0) => "Y>0".into(),
                (2, 0) => "Y'>0".into(),
                (1, 1) => "zYY".into(),
                (1, 2) => "zYY'".into(),
                (2, 1) => "zY'Y".into(),
                (2, 2) => "zY'Y'".into(),
                _ => unreachable!(),
            }
        };
        zero_name(fs, gd)
    };
    let mut compose = Vec::new();
    for (f, fs, fd) in names.iter().map(|(id, s, d)| (*id, *s, *d)) {
        let _ = fs;
        for (g, gs, _gd) in names.iter().map(|(id, s, d)| (*id, *s, *d)) {
            if obj_of(fd) == obj_of(gs) {
                compose.push((g.to_string(), f.to_string(), compose_ids(g, f)));
            }
        }
    }
    build(CategoryFile {
        objects,
        zero: "*".into(),
        morphisms,
        identity: [
            ("*".to_string(), "id*".to_string()),
            ("Y".to_string(), "idY".to_string()),
            ("Y'".to_string(), "idY'".to_string()),
        ]
        .into_iter()
        .collect(),
        compose,
        cofibrations: vec!["id*".into(), "idY".into(), "idY'".into(), "0>Y".into(), "0>Y'".into()],
        weak_equivalences: vec!["id*".into(), "idY".into(), "idY'".into(), "u".into(), "u'".into()],
        coproducts: vec![],
        cofibers: vec![
            CofiberFile {
                cofibration: "id*".into(),
                quotient_object: "*".into(),
                quotient_morphism: "id*".into(),
            },
            CofiberFile {
                cofibration: "idY".into(),
                quotient_object: "*".into(),
                quotient_morphism: "Y>0".into(),
            },
            CofiberFile {
                cofibration: "idY'".into(),
                quotient_object: "*".into(),
                quotient_morphism: "Y'>0".into(),
            },
            CofiberFile {
                cofibration: "0>Y".into(),
                quotient_object: "Y".into(),
                quotient_morphism: "idY".into(),
            },
            CofiberFile {
                cofibration: "0>Y'".into(),
                quotient_object: "Y'".into(),
                quotient_morphism: "idY'".into(),
            },
        ],
    })
}

/// Functor data for the iso-pair category: the swap Y ↔ Y'.
pub fn iso_pair_swap_functor() -> crate::waldcat::FunctorFile {
    crate::waldcat::FunctorFile {
        objects: vec![
            ("*".into(), "*".into()),
            ("Y".into(), "Y'".into()),
            ("Y'".into(), "Y".into()),
        ],
        morphisms: vec![
            ("id*".into(), "id*".into()),
            ("idY".into(), "idY'".into()),
            ("idY'".into(), "idY".into()),
            ("u".into(), "u'".into()),
            ("u'".into(), "u".into()),
            ("0>Y".into(), "0>Y'".into()),
            ("0>Y'".into(), "0>Y".into()),
            ("Y>0".into(), "Y'>0".into()),
            ("Y'>0".into(), "Y>0".into()),
            ("zYY".into(), "zY'Y'".into()),
            ("zYY'".into(), "zY'Y".into()),
            ("zY'Y".into(), "zYY'".into()),
            ("zY'Y'".into(), "zYY".into()),
        ],
    }
}

pub fn iso_pair_identity_functor() -> crate::waldcat::FunctorFile {
    let c = iso_pair();
    crate::waldcat::FunctorFile {
        objects: c.objects.iter().map(|o| (o.clone(), o.clone())).collect(),
        morphisms: c.morphisms.iter().map(|m| (m.id.clone(), m.id.clone())).collect(),
    }
}

/// ε: Id ⇒ Swap with components u and u'.
pub fn iso_pair_transformation() -> crate::waldcat::TransformationFile {
    crate::waldcat::TransformationFile {
        components: vec![
            ("*".into(), "id*".into()),
            ("Y".into(), "u".into()),
            ("Y'".into(), "u'".into()),
        ],
    }
}

/// δ: Swap ⇒ Id with components u' and u.
pub fn iso_pair_transformation_back() -> crate::waldcat::TransformationFile {
    crate::waldcat::TransformationFile {
        components: vec![
            ("*".into(), "id*".into()),
            ("Y".into(), "u'".into()),
            ("Y'".into(), "u".into()),
        ],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pointed_sets_fixtures_validate() {
        for n in 1..=3 {
            let c = pointed_sets(n);
            let rep = c.validate();
            assert!(rep.is_valid(), "pointed_sets({}):\n{}", n, rep.render());
        }
    }

    #[test]
    fn f2_fixture_validates() {
        for n in 0..=2 {
            let c = f2_vector_spaces(n);
            let rep = c.validate();
            assert!(rep.is_valid(), "f2_vector_spaces({}):\n{}", n, rep.render());
        }
    }

    #[test]
    fn iso_pair_validates() {
        let c = iso_pair();
        let rep = c.validate();
        assert!(rep.is_valid(), "{}", rep.render());
    }

    #[test]
    fn pointed_sets_counts() {
        let c = pointed_sets(2);
        // S1, S2; maps: S1→S1, S1→S2, S2→S1, S2→S2 (2 of those): 5 total.
        assert_eq!(c.objects.len(), 2);
        assert_eq!(c.morphisms.len(), 5);
    }
}

//! Presentation dump format.
//!
//! Schema: `{e0: [names], e1: [names], r0: [word], r1: [triple]}` where a
//! word is `{gen: [[name, exp]], comm: [[a, b, exp]]}` (comm entry [a, b, e]
//! encodes the basic commutator [b, a] in the fixed generator order) and a
//! triple is `{hat: {wedge: [[e, e', exp]], diag: [e]}, mixed: [[e0, e1,
//! exp]], word: word-over-E1}`. All arrays sorted, so structural file
//! equality implies presentation equality.

use super::free::{FreeSquad, SquadElement1, SquadError};
use super::presentation::SquadPresentation;
use crate::nil2::{GenSet, HatSquareElem, Nil2Word};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::str::FromStr;

#[derive(Debug, thiserror::Error)]
pub enum SquadIoError {
    #[error("bad integer literal `{0}`")]
    BadInteger(String),
    #[error(transparent)]
    Squad(#[from] SquadError),
    #[error(transparent)]
    Nil2(#[from] crate::nil2::Nil2Error),
}

#[derive(Serialize, Deserialize, Clone, Debug, Default)]
pub struct WordDump {
    #[serde(default)]
    pub gen: Vec<(String, String)>,
    #[serde(default)]
    pub comm: Vec<(String, String, String)>,
}

#[derive(Serialize, Deserialize, Clone, Debug, Default)]
pub struct HatDump {
    #[serde(default)]
    pub wedge: Vec<(String, String, String)>,
    #[serde(default)]
    pub diag: Vec<String>,
}

#[derive(Serialize, Deserialize, Clone, Debug, Default)]
pub struct TripleDump {
    #[serde(default)]
    pub hat: HatDump,
    #[serde(default)]
    pub mixed: Vec<(String, String, String)>,
    #[serde(default)]
    pub word: WordDump,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct PresentationDump {
    pub e0: Vec<String>,
    pub e1: Vec<String>,
    pub r0: Vec<WordDump>,
    pub r1: Vec<TripleDump>,
}

fn int(s: &str) -> Result<BigInt, SquadIoError> {
    BigInt::from_str(s).map_err(|_| SquadIoError::BadInteger(s.to_string()))
}

pub fn dump_word(w: &Nil2Word) -> WordDump {
    let gens = w.gens();
    WordDump {
        gen: w
            .gen_exponents()
            .iter()
            .map(|(&i, e)| (gens.name(i).to_string(), e.to_string()))
            .collect(),
        comm: w
            .comm_exponents()
            .iter()
            .map(|(&(i, j), e)| {
                (gens.name(i).to_string(), gens.name(j).to_string(), e.to_string())
            })
            .collect(),
    }
}

pub fn load_word(
    gens: &std::sync::Arc<GenSet>,
    d: &WordDump,
) -> Result<Nil2Word, SquadIoError> {
    let mut gen_exp = BTreeMap::new();
    for (name, e) in &d.gen {
        gen_exp.insert(gens.index_of(name)?, int(e)?);
    }
    let mut comm_exp = BTreeMap::new();
    for (a, b, e) in &d.comm {
        let (i, j) = (gens.index_of(a)?, gens.index_of(b)?);
        let (i, j, e) = if i < j { (i, j, int(e)?) } else { (j, i, -int(e)?) };
        comm_exp.insert((i, j), e);
    }
    Ok(Nil2Word::from_parts(gens.clone(), gen_exp, comm_exp))
}

pub fn dump_triple(free: &FreeSquad, x: &SquadElement1) -> TripleDump {
    TripleDump {
        hat: HatDump {
            wedge: x
                .hat
                .wedge_coeffs()
                .iter()
                .map(|(&(i, j), e)| {
                    (free.e0().name(i).to_string(), free.e0().name(j).to_string(), e.to_string())
                })
                .collect(),
            diag: x.hat.diag_support().iter().map(|&i| free.e0().name(i).to_string()).collect(),
        },
        mixed: x
            .mix
            .iter()
            .map(|(&(i, l), e)| {
                (free.e0().name(i).to_string(), free.e1().name(l).to_string(), e.to_string())
            })
            .collect(),
        word: dump_word(&x.w),
    }
}

pub fn load_triple(free: &FreeSquad, d: &TripleDump) -> Result<SquadElement1, SquadIoError> {
    let mut wedge = BTreeMap::new();
    for (a, b, e) in &d.hat.wedge {
        let (i, j) = (free.e0().index_of(a)?, free.e0().index_of(b)?);
        let (i, j, e) = if i < j { (i, j, int(e)?) } else { (j, i, -int(e)?) };
        wedge.insert((i, j), e);
    }
    let mut diag = BTreeSet::new();
    for name in &d.hat.diag {
        diag.insert(free.e0().index_of(name)?);
    }
    let hat = HatSquareElem::from_parts(free.e0().clone(), wedge, diag);
    let mut mix = BTreeMap::new();
    for (a, b, e) in &d.mixed {
        mix.insert((free.e0().index_of(a)?, free.e1().index_of(b)?), int(e)?);
    }
    let w = load_word(free.e1(), &d.word)?;
    let mut out = free.zero1();
    out.hat = hat;
    out.w = w;
    for (k, v) in mix {
        if !v.is_zero() {
            out.mix.insert(k, v);
        }
    }
    Ok(out)
}

use num_traits::Zero;

pub fn dump_presentation(p: &SquadPresentation) -> PresentationDump {
    let mut r0: Vec<WordDump> = p.r0().iter().map(dump_word).collect();
    r0.sort_by_key(|d| serde_json::to_string(d).unwrap());
    let mut r1: Vec<TripleDump> = p.r1().iter().map(|x| dump_triple(p.free(), x)).collect();
    r1.sort_by_key(|d| serde_json::to_string(d).unwrap());
    PresentationDump {
        e0: p.free().e0().names().to_vec(),
        e1: p.free().e1().names().to_vec(),
        r0,
        r1,
    }
}

pub fn load_presentation(d: &PresentationDump) -> Result<SquadPresentation, SquadIoError> {
    let e0 = GenSet::new(d.e0.clone())?;
    let e1 = GenSet::new(d.e1.clone())?;
    let free = FreeSquad::new(e0, e1)?;
    let r0 = d.r0.iter().map(|w| load_word(free.g0(), w)).collect::<Result<Vec<_>, _>>()?;
    let r1 = d.r1.iter().map(|t| load_triple(&free, t)).collect::<Result<Vec<_>, _>>()?;
    Ok(SquadPresentation::new(free, r0, r1)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip() {
        let e0 = GenSet::from_strs(&["a", "b"]);
        let e1 = GenSet::from_strs(&["u"]);
        let free = FreeSquad::new(e0, e1).unwrap();
        let rel0 = free.boundary_symbol(0).mul(&free.e0_generator(0).inverse()).unwrap();
        let rel1 = free.bracket(&free.e0_generator(0), &free.e0_generator(1));
        let p = SquadPresentation::new(free, vec![rel0], vec![rel1]).unwrap();
        let dump = dump_presentation(&p);
        let json = serde_json::to_string_pretty(&dump).unwrap();
        let back: PresentationDump = serde_json::from_str(&json).unwrap();
        let p2 = load_presentation(&back).unwrap();
        assert_eq!(serde_json::to_string(&dump_presentation(&p2)).unwrap(),
                   serde_json::to_string(&dump).unwrap());
    }
}

//! Free and presented stable quadratic modules: structure maps, word
//! problems, homotopy groups, the k-invariant, morphisms and homotopies.

mod free;
mod io;
mod maps;
mod presentation;

pub use free::{FreeSquad, SquadElement1, SquadError};
pub use io::{
    dump_presentation, dump_triple, dump_word, load_presentation, load_triple, load_word,
    HatDump, PresentationDump, SquadIoError, TripleDump, WordDump,
};
pub use maps::{Homotopy, SquadMorphism};
pub use presentation::{Closure0, Closure1, Pi0, SquadPresentation};

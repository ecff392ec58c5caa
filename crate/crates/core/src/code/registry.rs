//! Named codes used by the case searches.
//!
//! `golay24`, `qr48`, `c81` and `c82` are constructed; the remaining codes are
//! read from the files under `data/` (see `data/PROVENANCE.md`). Catalogued
//! parameters are revalidated by the test suite, not trusted.

use super::{construct, load_code, BinaryCode};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug)]
enum Source {
    Constructed(fn() -> BinaryCode),
    Embedded(&'static str),
}

#[derive(Clone, Copy, Debug)]
pub struct RegistryEntry {
    pub name: &'static str,
    pub description: &'static str,
    pub length: usize,
    pub dimension: usize,
    pub min_distance: usize,
    pub doubly_even: bool,
    source: Source,
}

impl RegistryEntry {
    pub fn load(&self) -> Result<BinaryCode> {
        match self.source {
            Source::Constructed(f) => Ok(f()),
            Source::Embedded(text) => load_code(text.as_bytes()),
        }
    }

    pub fn is_vendored(&self) -> bool {
        matches!(self.source, Source::Embedded(_))
    }
}

fn golay24() -> BinaryCode {
    construct::extended_qr(23).expect("q = 23")
}

fn qr48() -> BinaryCode {
    construct::extended_qr(47).expect("q = 47")
}

fn c81() -> BinaryCode {
    construct::extended_qr(31).expect("q = 31")
}

const ENTRIES: &[RegistryEntry] = &[
    RegistryEntry {
        name: "golay24",
        description: "extended Golay code (extended QR code of length 23)",
        length: 24,
        dimension: 12,
        min_distance: 8,
        doubly_even: true,
        source: Source::Constructed(golay24),
    },
    RegistryEntry {
        name: "qr48",
        description: "extended quadratic residue code of length 47",
        length: 48,
        dimension: 24,
        min_distance: 12,
        doubly_even: true,
        source: Source::Constructed(qr48),
    },
    RegistryEntry {
        name: "c81",
        description: "extremal doubly-even [32,16,8] code: extended QR code of length 31",
        length: 32,
        dimension: 16,
        min_distance: 8,
        doubly_even: true,
        source: Source::Constructed(c81),
    },
    RegistryEntry {
        name: "c82",
        description: "extremal doubly-even [32,16,8] code: Reed-Muller code RM(2,5)",
        length: 32,
        dimension: 16,
        min_distance: 8,
        doubly_even: true,
        source: Source::Constructed(construct::reed_muller_2_5),
    },
    RegistryEntry {
        name: "c83",
        description: "extremal doubly-even [32,16,8] code (third class)",
        length: 32,
        dimension: 16,
        min_distance: 8,
        doubly_even: true,
        source: Source::Embedded(include_str!("../../data/c83.txt")),
    },
    RegistryEntry {
        name: "c84",
        description: "extremal doubly-even [32,16,8] code (fourth class)",
        length: 32,
        dimension: 16,
        min_distance: 8,
        doubly_even: true,
        source: Source::Embedded(include_str!("../../data/c84.txt")),
    },
    RegistryEntry {
        name: "c85",
        description: "extremal doubly-even [32,16,8] code (fifth class)",
        length: 32,
        dimension: 16,
        min_distance: 8,
        doubly_even: true,
        source: Source::Embedded(include_str!("../../data/c85.txt")),
    },
    RegistryEntry {
        name: "x24",
        description: "singly-even self-dual [24,12,4] code, tetrad components d4^4",
        length: 24,
        dimension: 12,
        min_distance: 4,
        doubly_even: false,
        source: Source::Embedded(include_str!("../../data/x24.txt")),
    },
    RegistryEntry {
        name: "y24",
        description: "singly-even self-dual [24,12,4] code, tetrad components d4^2",
        length: 24,
        dimension: 12,
        min_distance: 4,
        doubly_even: false,
        source: Source::Embedded(include_str!("../../data/y24.txt")),
    },
    RegistryEntry {
        name: "z24",
        description: "the singly-even self-dual [24,12,6] code",
        length: 24,
        dimension: 12,
        min_distance: 6,
        doubly_even: false,
        source: Source::Embedded(include_str!("../../data/z24.txt")),
    },
];

pub fn registry_entries() -> &'static [RegistryEntry] {
    ENTRIES
}

/// Looks up a code by name (`golay24`, `qr48`, `c81`..`c85`, `x24`, `y24`, `z24`).
pub fn registry(name: &str) -> Result<BinaryCode> {
    ENTRIES
        .iter()
        .find(|e| e.name.eq_ignore_ascii_case(name))
        .ok_or_else(|| Error::UnknownCode(name.to_string()))?
        .load()
}

//! Built-in example varieties with trusted flags.
//!
//! Each entry has a default prime; `bad_primes` lists the characteristics
//! where the equations acquire singularities, and overriding `p` to one of
//! them drops the smoothness flag.

use crate::input::{VarietyFlags, VarietyInput, SCHEMA_VERSION};

#[derive(Debug, Clone, Copy)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub description: &'static str,
    pub n: usize,
    pub equations: &'static [&'static str],
    pub p: u64,
    pub s: usize,
    pub smooth: bool,
    pub fano: bool,
    pub bad_primes: &'static [u64],
}

const ENTRIES: [CatalogEntry; 15] = [
    CatalogEntry {
        name: "p1",
        description: "the projective line",
        n: 1,
        equations: &[],
        p: 2,
        s: 3,
        smooth: true,
        fano: true,
        bad_primes: &[],
    },
    CatalogEntry {
        name: "p2",
        description: "the projective plane",
        n: 2,
        equations: &[],
        p: 2,
        s: 3,
        smooth: true,
        fano: true,
        bad_primes: &[],
    },
    CatalogEntry {
        name: "p3",
        description: "projective 3-space",
        n: 3,
        equations: &[],
        p: 2,
        s: 2,
        smooth: true,
        fano: true,
        bad_primes: &[],
    },
    CatalogEntry {
        name: "conic",
        description: "smooth plane conic",
        n: 2,
        equations: &["x0*x2 - x1^2"],
        p: 3,
        s: 3,
        smooth: true,
        fano: true,
        bad_primes: &[],
    },
    CatalogEntry {
        name: "elliptic-5",
        description: "ordinary elliptic curve y^2 z = x^3 - x z^2",
        n: 2,
        equations: &["x1^2*x2 - x0^3 + x0*x2^2"],
        p: 5,
        s: 4,
        smooth: true,
        fano: false,
        bad_primes: &[2],
    },
    CatalogEntry {
        name: "elliptic-7-ss",
        description: "supersingular elliptic curve y^2 z = x^3 + x z^2",
        n: 2,
        equations: &["x1^2*x2 - x0^3 - x0*x2^2"],
        p: 7,
        s: 2,
        smooth: true,
        fano: false,
        bad_primes: &[2],
    },
    CatalogEntry {
        name: "quadric-surface",
        description: "split quadric surface",
        n: 3,
        equations: &["x0*x3 - x1*x2"],
        p: 2,
        s: 4,
        smooth: true,
        fano: true,
        bad_primes: &[],
    },
    CatalogEntry {
        name: "quadric-surface-nonsplit",
        description: "non-split quadric surface",
        n: 3,
        equations: &["x0*x1 + x2^2 + x2*x3 + x3^2"],
        p: 2,
        s: 3,
        smooth: true,
        fano: true,
        bad_primes: &[3],
    },
    CatalogEntry {
        name: "cubic-surface-f2",
        description: "Fermat cubic surface",
        n: 3,
        equations: &["x0^3 + x1^3 + x2^3 + x3^3"],
        p: 2,
        s: 6,
        smooth: true,
        fano: true,
        bad_primes: &[3],
    },
    CatalogEntry {
        name: "quadric4fold-f3",
        description: "split quadric fourfold",
        n: 5,
        equations: &["x0*x5 + x1*x4 + x2*x3"],
        p: 3,
        s: 1,
        smooth: true,
        fano: true,
        bad_primes: &[],
    },
    CatalogEntry {
        name: "quadric4fold-diag-f3",
        description: "diagonal quadric fourfold",
        n: 5,
        equations: &["x0^2 + x1^2 + x2^2 + x3^2 + x4^2 + x5^2"],
        p: 3,
        s: 1,
        smooth: true,
        fano: true,
        bad_primes: &[2],
    },
    CatalogEntry {
        name: "quartic-curve-f3",
        description: "Fermat plane quartic, genus 3",
        n: 2,
        equations: &["x0^4 + x1^4 + x2^4"],
        p: 3,
        s: 6,
        smooth: true,
        fano: false,
        bad_primes: &[2],
    },
    CatalogEntry {
        name: "quartic-surface",
        description: "Fermat quartic surface",
        n: 3,
        equations: &["x0^4 + x1^4 + x2^4 + x3^4"],
        p: 3,
        s: 2,
        smooth: true,
        fano: false,
        bad_primes: &[2],
    },
    CatalogEntry {
        name: "quadric-threefold",
        description: "smooth quadric threefold",
        n: 4,
        equations: &["x0*x4 + x1*x3 + x2^2"],
        p: 3,
        s: 2,
        smooth: true,
        fano: true,
        bad_primes: &[],
    },
    CatalogEntry {
        name: "cone-over-conic",
        description: "quadric cone in P^3, singular at its vertex",
        n: 3,
        equations: &["x0*x2 - x1^2"],
        p: 3,
        s: 3,
        smooth: false,
        fano: false,
        bad_primes: &[],
    },
];

pub fn entries() -> &'static [CatalogEntry] {
    &ENTRIES
}

pub fn lookup(name: &str) -> Option<&'static CatalogEntry> {
    ENTRIES.iter().find(|e| e.name == name)
}

impl CatalogEntry {
    /// The entry as an input document, optionally at another prime, degree
    /// or tower height.
    pub fn to_input(&self, p: Option<u64>, d: Option<u32>, s: Option<usize>) -> VarietyInput {
        let p = p.unwrap_or(self.p);
        let smooth = self.smooth && !self.bad_primes.contains(&p);
        VarietyInput {
            schema_version: SCHEMA_VERSION,
            name: self.name.to_string(),
            n: self.n,
            equations: self.equations.iter().map(ToString::to_string).collect(),
            p,
            d: d.unwrap_or(1),
            s: s.unwrap_or(self.s),
            flags: VarietyFlags {
                smooth: Some(smooth),
                fano: Some(self.fano && smooth),
                complete_intersection: Some(true),
            },
            budget: None,
        }
    }

    pub fn default_input(&self) -> VarietyInput {
        self.to_input(None, None, None)
    }
}

//! Enumeration of solution components over the two bundle types of a fixed
//! base, ordered by twisting degree.
//!
//! A polarization parameter `p` fixes the integral classes: the untwisted
//! bundle carries fiber ratios `k/p` and the twisted one `(2k+1)/(2p+1)`,
//! `k` running below `p`. Each class yields one candidate; the certificate
//! decides admission. Genus 1 admits everything, higher genus admits a
//! prefix in `k`, and Einstein-Hilbert values decrease strictly along the
//! admitted sequence, so the count of distinct values equals the count of
//! admitted entries.

use crate::exact::{fmt_rat, rat, rat_i, rat_to_f64, Rat};
use crate::functional::{eh_case1_closed, eh_value, reference_eh, ReferenceMetric};
use crate::poly::PositivityStatus;
use crate::surface::{solve_case1, ClassParity, EMCandidate, KahlerClass, RuledSurface};
use num_traits::{Signed, ToPrimitive};
use rayon::prelude::*;
use thiserror::Error;

/// Which ruled bundle over the base the scan walks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Manifold {
    /// Trivial bundle, even twisting degrees `2k`.
    Product,
    /// Nontrivial bundle, odd twisting degrees `2k+1`.
    Twisted,
}

impl Manifold {
    pub fn as_str(&self) -> &'static str {
        match self {
            Manifold::Product => "product",
            Manifold::Twisted => "twisted",
        }
    }
}

impl std::fmt::Display for Manifold {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModuliError {
    #[error("genus-0 bases carry extra non-ruled components; scans start at genus 1")]
    UnsupportedGenus(u32),
    #[error("no integral classes exist for p = {0}")]
    EmptyScan(String),
}

/// One enumerated class. The `k = 0` entry of a product scan is the product
/// metric itself (no fiber ratio, no candidate); every other entry records
/// the solved candidate and its certificate outcome.
#[derive(Clone, Debug)]
pub struct ModuliEntry {
    pub k: u64,
    /// Twisting degree, `2k` or `2k+1`; `0` for the product reference.
    pub degree: u32,
    pub x: Option<Rat>,
    pub candidate: Option<EMCandidate>,
    /// Einstein-Hilbert value: genuine for admitted entries, the formal
    /// closed-form continuation otherwise.
    pub eh: f64,
    pub admitted: bool,
}

impl ModuliEntry {
    pub fn verdict(&self) -> Option<PositivityStatus> {
        self.candidate.as_ref().map(|c| c.verdict().status)
    }
}

#[derive(Clone, Debug)]
pub struct ModuliScan {
    pub manifold: Manifold,
    pub genus: u32,
    pub p: Rat,
    pub entries: Vec<ModuliEntry>,
    /// Number of admitted entries; their Einstein-Hilbert values are
    /// pairwise distinct because they decrease strictly in `k`.
    pub distinct_count: usize,
    pub warnings: Vec<String>,
}

fn entry_for(manifold: Manifold, genus: u32, p: &Rat, k: u64) -> ModuliEntry {
    if manifold == Manifold::Product && k == 0 {
        return ModuliEntry {
            k: 0,
            degree: 0,
            x: None,
            candidate: None,
            eh: reference_eh(ReferenceMetric::ProductCsc {
                genus,
                p: rat_to_f64(p),
            }),
            admitted: true,
        };
    }
    let parity = match manifold {
        Manifold::Product => ClassParity::Even { k },
        Manifold::Twisted => ClassParity::Odd { k },
    };
    let class = KahlerClass::from_integral_data(parity, p.clone())
        .expect("k < p holds for every enumerated index");
    let degree = class.degree();
    let surface = RuledSurface::new(genus, degree).expect("degree >= 1");
    let cand = solve_case1(class.x(), &surface);
    let admitted = cand.is_solution();
    if genus >= 2 {
        // The threshold lemma gives a sufficient admission bound; the
        // certificate must agree with it.
        let s = surface.s_sigma();
        let lemma = (s * s + rat_i(2)).recip();
        if class.x() < &lemma {
            debug_assert!(admitted, "lemma-admitted class failed certification");
        }
    }
    let eh = if admitted {
        eh_value(&cand, &surface)
            .expect("admitted candidates evaluate")
            .eh
    } else {
        eh_case1_closed(rat_to_f64(class.x()), &surface)
    };
    ModuliEntry {
        k,
        degree,
        x: Some(class.x().clone()),
        candidate: Some(cand),
        eh,
        admitted,
    }
}

/// Stated linear admissibility bound for twisted scans, and the bound the
/// threshold lemma actually provides. They differ by a factor of two on the
/// genus term; entries caught between the two get a warning.
fn twisted_bound_gap(genus: u32, p: &Rat, k: u64) -> Option<(Rat, Rat)> {
    if genus < 2 {
        return None;
    }
    let big_p = rat_i(2) * p + rat_i(1);
    let big_k = rat_i(2 * k as i64 + 1);
    let genus_sq = rat_i((genus as i64 - 1) * (genus as i64 - 1));
    let stated = rat_i(2) * &genus_sq / &big_k + rat_i(2) * &big_k;
    let supported = rat_i(4) * &genus_sq / &big_k + rat_i(2) * &big_k;
    if big_p > stated && big_p <= supported {
        Some((stated, supported))
    } else {
        None
    }
}

/// Walk all integral classes below `p` on one bundle type.
pub fn enumerate_components(
    manifold: Manifold,
    genus: u32,
    p: &Rat,
) -> Result<ModuliScan, ModuliError> {
    if genus == 0 {
        return Err(ModuliError::UnsupportedGenus(genus));
    }
    let k_max = if p.is_positive() {
        p.ceil().to_integer().to_i64().unwrap_or(i64::MAX) - 1
    } else {
        -1
    };
    if k_max < 0 {
        return Err(ModuliError::EmptyScan(fmt_rat(p)));
    }
    let entries: Vec<ModuliEntry> = (0..=k_max as u64)
        .into_par_iter()
        .map(|k| entry_for(manifold, genus, p, k))
        .collect();

    let mut warnings = Vec::new();
    if manifold == Manifold::Twisted {
        for e in &entries {
            if let Some((stated, supported)) = twisted_bound_gap(genus, p, e.k) {
                let verdict = e
                    .verdict()
                    .map(|v| v.to_string())
                    .unwrap_or_else(|| "none".into());
                warnings.push(format!(
                    "twisted k = {}: stated admissibility bound 2p+1 > {} holds, \
                     but the estimate behind it needs 2p+1 > {}; certificate verdict: {}",
                    e.k,
                    fmt_rat(&stated),
                    fmt_rat(&supported),
                    verdict
                ));
            }
        }
    }

    let mut prev: Option<(u64, f64)> = None;
    for e in entries.iter().filter(|e| e.admitted) {
        if let Some((pk, peh)) = prev {
            assert!(
                e.eh < peh,
                "Einstein-Hilbert values must decrease strictly: k = {pk} gives {peh}, k = {} gives {}",
                e.k,
                e.eh
            );
        }
        prev = Some((e.k, e.eh));
    }
    let distinct_count = entries.iter().filter(|e| e.admitted).count();

    Ok(ModuliScan {
        manifold,
        genus,
        p: p.clone(),
        entries,
        distinct_count,
        warnings,
    })
}

/// Smallest half-integer `p` whose scan admits at least `target` distinct
/// Einstein-Hilbert values; returns that scan (its `p` field is the witness).
pub fn witness_class(
    manifold: Manifold,
    genus: u32,
    target: usize,
) -> Result<ModuliScan, ModuliError> {
    assert!(target >= 1, "target count must be positive");
    for half_steps in 1..=4000i64 {
        let p = rat(half_steps, 2);
        let scan = enumerate_components(manifold, genus, &p)?;
        if scan.distinct_count >= target {
            return Ok(scan);
        }
    }
    unreachable!("distinct component count failed to reach {target} below p = 2000")
}

use std::collections::{BTreeMap, BTreeSet};

use super::SolutionParams;
use crate::bilinear::{thm2_catalog, EquationSpec, Offset};
use crate::error::{Error, Result};
use crate::scalar::{ComplexScalar, Real};

type Site = (i64, i64, i64);

/// Target block of offsets `(Δm, n, Δk)`: `Δm ∈ [1 - m_size, 0]`,
/// `n ∈ [0, n_max]`, `Δk ∈ [0, k_size - 1]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Block {
    pub m_size: i64,
    pub n_max: i64,
    pub k_size: i64,
}

impl Block {
    pub fn cube(size: i64) -> Self {
        Block {
            m_size: size,
            n_max: size - 1,
            k_size: size,
        }
    }

    pub fn sites(&self) -> impl Iterator<Item = Site> + '_ {
        (1 - self.m_size..=0).flat_map(move |dm| {
            (0..=self.n_max).flat_map(move |n| (0..self.k_size).map(move |dk| (dm, n, dk)))
        })
    }
}

/// Values of `ξ` at offsets `(Δm, n, Δk)` from the base point.
#[derive(Clone, Debug)]
pub struct Lattice<R: Real> {
    pub values: BTreeMap<Site, ComplexScalar<R>>,
    pub sweeps: usize,
}

const MARGIN: i64 = 2;

/// Seeds: `ξ = 1` at `n = -1`, `Δm ∈ {-1, 0}`, `Δk ∈ {0, 1}`, and
/// `ξ = μ(u+v+kτ, v; m)` at `n = 0`, `Δm = 0`, `Δk ∈ {0, 1}`.
pub fn seeds<R: Real>(sp: &SolutionParams<R>) -> Result<BTreeMap<Site, ComplexScalar<R>>> {
    let one = ComplexScalar::one(sp.bits());
    let mut out = BTreeMap::new();
    for dm in [-1, 0] {
        for dk in [0, 1] {
            out.insert((dm, -1, dk), one.clone());
        }
    }
    out.insert((0, 0, 0), sp.mu_entry(0, 0)?);
    out.insert((0, 0, 1), sp.mu_entry(1, 0)?);
    Ok(out)
}

fn shift(s: Site, o: Offset) -> Site {
    (s.0 + o.0, s.1 + o.1, s.2 + o.2)
}

/// Fill `block` from the seeds alone by solving relations (1)–(8) for a single
/// unknown vertex. Relations are tried in order and the scan restarts from (1)
/// after each productive pass, so lower-numbered relations are preferred.
pub fn lattice_propagate<R: Real>(sp: &SolutionParams<R>, block: Block) -> Result<Lattice<R>> {
    let mut known = seeds(sp)?;
    let region: BTreeSet<Site> = (-block.m_size - MARGIN..=MARGIN)
        .flat_map(|dm| {
            (-1..=block.n_max.max(0))
                .flat_map(move |n| (-MARGIN..block.k_size + MARGIN).map(move |dk| (dm, n, dk)))
        })
        .collect();
    let catalog = thm2_catalog();
    let mut sweeps = 0;
    loop {
        sweeps += 1;
        let progressed = catalog
            .iter()
            .map(|eq| solve_pass(sp, eq, &region, &mut known))
            .find(|r| !matches!(r, Ok(false)));
        match progressed {
            Some(Ok(_)) => continue,
            Some(Err(e)) => return Err(e),
            None => break,
        }
    }
    if let Some(site) = block.sites().find(|s| !known.contains_key(s)) {
        return Err(Error::PropagationStall(format!(
            "offset (m{:+}, n = {}, k{:+}) after {sweeps} sweeps",
            site.0, site.1, site.2
        )));
    }
    Ok(Lattice {
        values: known,
        sweeps,
    })
}

fn solve_pass<R: Real>(
    sp: &SolutionParams<R>,
    eq: &EquationSpec,
    region: &BTreeSet<Site>,
    known: &mut BTreeMap<Site, ComplexScalar<R>>,
) -> Result<bool> {
    let ctx = &sp.ctx;
    let mut progressed = false;
    for &site in region {
        let pairs: Vec<(Site, Site)> = eq
            .terms
            .iter()
            .map(|t| (shift(site, t.left), shift(site, t.right)))
            .collect();
        if pairs
            .iter()
            .any(|(l, r)| !region.contains(l) || !region.contains(r))
        {
            continue;
        }
        let mut unknown: Vec<Site> = pairs
            .iter()
            .flat_map(|(l, r)| [*l, *r])
            .filter(|s| !known.contains_key(s))
            .collect();
        unknown.dedup();
        if unknown.len() != 1 {
            continue;
        }
        let target = unknown[0];
        let m = sp.m.clone() + ctx.c(site.0 as f64, 0.0);
        let k = sp.k.clone() + ctx.c(site.2 as f64, 0.0);
        let mut rest = ComplexScalar::zero(sp.bits());
        let mut lead = None;
        for (t, (l, r)) in eq.terms.iter().zip(&pairs) {
            let c = t.coeff.eval_thm2(ctx, &sp.x, &m, site.1, &k);
            if *l == target && *r == target {
                // A squared unknown would need a root; leave it to another relation.
                lead = None;
                break;
            } else if *l == target {
                lead = Some(c * &known[r]);
            } else if *r == target {
                lead = Some(c * &known[l]);
            } else {
                rest = rest + c * &known[l] * &known[r];
            }
        }
        let Some(lead) = lead else { continue };
        if lead.is_zero() {
            continue;
        }
        let value = (-rest).try_div(&lead, "propagation step").map_err(|_| {
            Error::PropagationStall(format!(
                "zero divisor solving relation {} at {target:?}",
                eq.id
            ))
        })?;
        known.insert(target, value);
        progressed = true;
    }
    Ok(progressed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::QContext;

    fn sp(m: f64, k: f64) -> SolutionParams<f64> {
        let ctx = QContext::from_f64(0.0, 1.0, 53).unwrap();
        SolutionParams::new(
            ctx.clone(),
            ctx.c(0.23, 0.11),
            ctx.c(0.41, 0.07),
            ctx.c(m, 0.0),
            0,
            ctx.c(k, 0.0),
        )
        .unwrap()
    }

    #[test]
    fn seeds_are_kept() {
        let s = sp(2.0, 0.0);
        let lat = lattice_propagate(&s, Block::cube(2)).unwrap();
        for (site, v) in seeds(&s).unwrap() {
            assert_eq!(lat.values[&site], v);
        }
    }

    #[test]
    fn block_matches_determinants() {
        for (m, k) in [(2.0, 0.0), (1.3, 0.4)] {
            let s = sp(m, k);
            let lat = lattice_propagate(&s, Block::cube(2)).unwrap();
            for site in Block::cube(2).sites() {
                let d = s.xi_at(site.0, site.1, site.2).unwrap();
                let rel = (lat.values[&site].clone() - &d).abs_f64() / d.abs_f64();
                assert!(rel < 1e-6, "{site:?}: {rel:e}");
            }
        }
    }

    #[test]
    fn n_one_row_matches_determinants() {
        let s = sp(2.0, 0.0);
        let block = Block {
            m_size: 1,
            n_max: 1,
            k_size: 3,
        };
        let lat = lattice_propagate(&s, block).unwrap();
        for dk in 0..3 {
            let d = s.xi_at(0, 1, dk).unwrap();
            let rel = (lat.values[&(0, 1, dk)].clone() - &d).abs_f64() / d.abs_f64();
            assert!(rel < 1e-6, "dk={dk}: {rel:e}");
        }
    }

    #[test]
    fn unreachable_block_stalls() {
        // Two m-columns of seeds cannot reach three columns.
        let block = Block {
            m_size: 3,
            n_max: 1,
            k_size: 2,
        };
        let err = lattice_propagate(&sp(2.0, 0.0), block).unwrap_err();
        assert!(matches!(err, Error::PropagationStall(_)), "{err}");
    }
}

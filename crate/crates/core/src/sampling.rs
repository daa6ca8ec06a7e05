//! Seeded random points of the parameter domain.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::coordinates::{domain_violation, vertex_eigen, EdgeParams};
use crate::error::{Error, Result};
use crate::pants::admissibility_gaps;
use crate::projective::C64;
use crate::surface::{PantsSurface, Slot};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum SampleMode {
    /// `e = −exp(u)`, `u ∈ [0.1, 2]`.
    Fuchsian,
    /// `|e| ∈ [1.2, 3]` or its reciprocal, uniform phase.
    #[default]
    General,
}

/// Relative distance kept from every reducibility locus.
const MARGIN: f64 = 0.05;

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

fn eigenvalue(rng: &mut ChaCha8Rng, mode: SampleMode) -> C64 {
    match mode {
        SampleMode::Fuchsian => C64::new(-rng.gen_range(0.1f64..2.0).exp(), 0.0),
        SampleMode::General => {
            let r = rng.gen_range(1.2..3.0);
            let th = rng.gen_range(0.0..std::f64::consts::TAU);
            C64::from_polar(if rng.gen_bool(0.5) { r } else { 1.0 / r }, th)
        }
    }
}

/// Modulus log-uniform in `[0.1, 10]`, uniform phase.
fn twist(rng: &mut ChaCha8Rng) -> C64 {
    let r = 10f64.powf(rng.gen_range(-1.0..1.0));
    C64::from_polar(r, rng.gen_range(0.0..std::f64::consts::TAU))
}

fn well_separated(surface: &PantsSurface, p: &EdgeParams) -> bool {
    surface.trivalent_ids().into_iter().all(|v| {
        let e = vertex_eigen(surface, &p.eigen, Slot { vertex: v, pos: 0 });
        admissibility_gaps(e).iter().all(|(g, s, _)| g.norm() > MARGIN * s)
    })
}

/// One admissible point, rejection-sampled.
pub fn sample_params(surface: &PantsSurface, rng: &mut ChaCha8Rng, mode: SampleMode) -> Result<EdgeParams> {
    for _ in 0..10_000 {
        let p = EdgeParams {
            eigen: surface.edge_ids().into_iter().map(|k| (k, eigenvalue(rng, mode))).collect(),
            twist: surface.interior_edges().into_iter().map(|k| (k, twist(rng))).collect(),
        };
        if domain_violation(&p, surface)?.is_none() && well_separated(surface, &p) {
            return Ok(p);
        }
    }
    Err(Error::Domain("no admissible sample found".into()))
}

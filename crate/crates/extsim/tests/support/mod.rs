//! Shared helpers for the integration test suites.

use extsim::distributions::ParametricDistribution;
use extsim::measures::MeasureKind;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

pub fn rng(seed: u64) -> ChaCha12Rng {
    ChaCha12Rng::seed_from_u64(seed)
}

/// A random distribution whose measure of the given kind is square
/// integrable and cheap to integrate.
///
/// Density pairs avoid beta/power shapes below 1 (their squared densities
/// stop being integrable near 0.5 and become endpoint-singular before
/// that); cumulative pairs only draw from the bounded families. Uniform
/// supports all start at 0 so that random pairs always overlap.
pub fn random_distribution(kind: MeasureKind, rng: &mut ChaCha12Rng) -> ParametricDistribution {
    let families = match kind {
        MeasureKind::Cumulative => 3,
        _ => 4,
    };
    match rng.random_range(0..families) {
        0 => {
            let (a, b) = match kind {
                MeasureKind::Density => (
                    1.0 + 4.0 * rng.random::<f64>(),
                    1.0 + 4.0 * rng.random::<f64>(),
                ),
                _ => (
                    0.7 + 4.3 * rng.random::<f64>(),
                    0.7 + 4.3 * rng.random::<f64>(),
                ),
            };
            ParametricDistribution::beta(a, b).expect("valid shapes")
        }
        1 => {
            let b = 0.5 + 3.5 * rng.random::<f64>();
            ParametricDistribution::uniform(0.0, b).expect("valid bounds")
        }
        2 => {
            let c = match kind {
                MeasureKind::Density => 1.0 + 3.0 * rng.random::<f64>(),
                _ => 0.7 + 3.3 * rng.random::<f64>(),
            };
            ParametricDistribution::power(c).expect("valid exponent")
        }
        _ => {
            let rate = 0.2 + 4.8 * rng.random::<f64>();
            ParametricDistribution::exponential(rate).expect("valid rate")
        }
    }
}

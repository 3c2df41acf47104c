use rand::Rng;
use serde::{Deserialize, Serialize};

use super::LinkSpec;
use crate::error::{Error, Result};

/// How per-slot packet arrivals are realized from the mean rate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ArrivalMode {
    /// One packet with probability `lambda`, none otherwise. Needs `lambda <= 1`.
    #[default]
    Bernoulli,
    /// Exactly `lambda` (possibly fractional) packets every slot.
    Deterministic,
}

impl ArrivalMode {
    /// `Var(A_i)` for a link with mean rate `lambda`.
    pub fn variance(self, lambda: f64) -> f64 {
        match self {
            ArrivalMode::Bernoulli => lambda * (1.0 - lambda),
            ArrivalMode::Deterministic => 0.0,
        }
    }

    pub fn variances(self, links: &[LinkSpec]) -> Vec<f64> {
        links.iter().map(|l| self.variance(l.lambda)).collect()
    }

    pub fn check(self, links: &[LinkSpec]) -> Result<()> {
        if self == ArrivalMode::Bernoulli {
            if let Some(link) = links.iter().find(|l| l.lambda > 1.0) {
                return Err(Error::Config(format!(
                    "link {} has lambda = {} > 1, which Bernoulli arrivals cannot realize; \
                     use deterministic arrivals instead",
                    link.id, link.lambda
                )));
            }
        }
        Ok(())
    }
}

/// Packet counts `A_i[t]` for one slot.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ArrivalSample {
    pub packets: Vec<f64>,
}

impl ArrivalSample {
    pub fn zeros(n: usize) -> Self {
        Self {
            packets: vec![0.0; n],
        }
    }

    /// Refills `self` in place with a fresh draw.
    pub fn draw<R: Rng + ?Sized>(&mut self, links: &[LinkSpec], mode: ArrivalMode, rng: &mut R) {
        self.packets.clear();
        self.packets.extend(links.iter().map(|link| match mode {
            ArrivalMode::Deterministic => link.lambda,
            // gen_bool would panic outside [0, 1]; the bounds are enforced by check()
            ArrivalMode::Bernoulli => {
                if link.lambda >= 1.0 {
                    1.0
                } else if link.lambda <= 0.0 {
                    0.0
                } else if rng.gen_bool(link.lambda) {
                    1.0
                } else {
                    0.0
                }
            }
        }));
    }
}

pub fn sample_arrivals<R: Rng + ?Sized>(
    links: &[LinkSpec],
    mode: ArrivalMode,
    rng: &mut R,
) -> Result<ArrivalSample> {
    mode.check(links)?;
    let mut sample = ArrivalSample::zeros(links.len());
    sample.draw(links, mode, rng);
    Ok(sample)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::uniform_links;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn degenerate_rates_are_deterministic() {
        let links = uniform_links(&[0.0, 1.0], 1.0, 1.0, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..1000 {
            let a = sample_arrivals(&links, ArrivalMode::Bernoulli, &mut rng).unwrap();
            assert_eq!(a.packets, vec![0.0, 1.0]);
        }
    }

    #[test]
    fn bernoulli_rejects_rates_above_one() {
        let links = uniform_links(&[1.5], 1.0, 1.0, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let err = sample_arrivals(&links, ArrivalMode::Bernoulli, &mut rng).unwrap_err();
        assert!(err.to_string().contains("deterministic"));
        let a = sample_arrivals(&links, ArrivalMode::Deterministic, &mut rng).unwrap();
        assert_eq!(a.packets, vec![1.5]);
    }

    #[test]
    fn bernoulli_mean_converges() {
        // Hoeffding: P(|mean - p| > 0.002) <= 2 exp(-2 * 1e6 * 0.002^2) ~ 7e-4
        let links = uniform_links(&[0.25], 1.0, 1.0, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        let mut sample = ArrivalSample::zeros(1);
        let slots = 1_000_000;
        let mut total = 0.0;
        for _ in 0..slots {
            sample.draw(&links, ArrivalMode::Bernoulli, &mut rng);
            total += sample.packets[0];
        }
        let mean = total / slots as f64;
        assert!((mean - 0.25).abs() < 0.002, "mean {mean}");
    }

    #[test]
    fn variance_matches_mode() {
        assert_eq!(ArrivalMode::Bernoulli.variance(0.5), 0.25);
        assert_eq!(ArrivalMode::Deterministic.variance(0.5), 0.0);
    }
}

//! Seeded exact sampling of parametrized variety points.
//!
//! Reproducibility is the whole point: a fixed 64-bit mixing generator and a
//! fixed draw order (for each parameter, numerator then denominator, both
//! uniform on [1, range]) mean equal seeds give equal sample streams on
//! every platform. The generator state advances by the golden-ratio
//! increment and the output runs through two xor-multiply mixing rounds.

use crate::error::Result;
use crate::map::MonomialMap;
use crate::{Q, Z};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SampleConfig {
    pub seed: u64,
    /// Numerators and denominators are drawn uniformly from [1, range].
    pub coordinate_range: u64,
}

impl SampleConfig {
    pub const DEFAULT_RANGE: u64 = 97;

    pub fn new(seed: u64) -> SampleConfig {
        SampleConfig {
            seed,
            coordinate_range: SampleConfig::DEFAULT_RANGE,
        }
    }

    pub fn with_range(seed: u64, coordinate_range: u64) -> SampleConfig {
        SampleConfig {
            seed,
            coordinate_range: coordinate_range.max(1),
        }
    }

    pub fn rng(&self) -> Rng {
        Rng {
            state: self.seed,
            range: self.coordinate_range,
        }
    }
}

/// Splitmix-style generator: golden-ratio state advance, two mixing rounds.
#[derive(Debug, Clone)]
pub struct Rng {
    state: u64,
    range: u64,
}

impl Rng {
    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    }

    /// Uniform draw from [1, range].
    pub fn draw(&mut self) -> u64 {
        1 + self.next_u64() % self.range
    }

    /// Positive rational with numerator and denominator each drawn from
    /// [1, range], numerator first.
    pub fn rational(&mut self) -> Q {
        let num = self.draw();
        let den = self.draw();
        Q::new(Z::from(num), Z::from(den))
    }

    /// One parameter vector, coordinates in declaration order.
    pub fn params(&mut self, count: usize) -> Vec<Q> {
        (0..count).map(|_| self.rational()).collect()
    }
}

/// A sampled point of the parametrized variety.
pub fn sample_variety_point(map: &MonomialMap, rng: &mut Rng) -> Result<Vec<Q>> {
    let params = rng.params(map.params().len());
    map.evaluate(&params)
}

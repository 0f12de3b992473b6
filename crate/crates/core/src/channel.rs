//! Antipodal signalling over AWGN, hard decisions, and path metrics.
//!
//! Bit `v` is sent as `(-1)^v` (signal energy fixed at 1). The reliability
//! of position `j` is `|r_j|`, which is a fixed positive multiple of the
//! log-likelihood-ratio magnitude on this channel and so yields the same
//! metric-minimising codewords.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf2::BinaryVector;
use crate::rng::GaussianSource;

/// Hard decisions and their reliabilities for one received word.
#[derive(Clone, Debug, PartialEq)]
pub struct BitMetrics {
    y: BinaryVector,
    weights: Vec<f64>,
}

impl BitMetrics {
    pub fn new(y: BinaryVector, weights: Vec<f64>) -> Result<Self> {
        if y.len() != weights.len() {
            return Err(Error::Dimension(format!(
                "{} hard decisions but {} weights",
                y.len(),
                weights.len()
            )));
        }
        if let Some(&w) = weights.iter().find(|w| w.is_nan() || **w < 0.0) {
            return Err(Error::NegativeWeight(w));
        }
        Ok(Self { y, weights })
    }

    /// AWGN convention: `y_j = 1` iff `r_j < 0`, weight `|r_j|`.
    pub fn from_received(r: &[f64]) -> Self {
        let y = BinaryVector::from_bits(&r.iter().map(|&x| (x < 0.0) as u8).collect::<Vec<_>>());
        Self {
            y,
            weights: r.iter().map(|x| x.abs()).collect(),
        }
    }

    /// From log-likelihood ratios `log P(r|0)/P(r|1)`: `y_j = 1` iff `φ_j < 0`.
    pub fn from_llrs(llrs: &[f64]) -> Self {
        Self::from_received(llrs)
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn hard_decision(&self) -> &BinaryVector {
        &self.y
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Metric of placing `label` at position `j`.
    #[inline]
    pub fn cost(&self, j: usize, label: u8) -> f64 {
        if self.y.bit(j) != label {
            self.weights[j]
        } else {
            0.0
        }
    }

    /// Same metrics with every weight multiplied by `c > 0`.
    pub fn scaled(&self, c: f64) -> Self {
        Self {
            y: self.y.clone(),
            weights: self.weights.iter().map(|w| w * c).collect(),
        }
    }
}

/// One transmission: the received reals and what the decoder consumes.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChannelOutput {
    pub r: Vec<f64>,
    pub phi_abs: Vec<f64>,
    #[serde(serialize_with = "serialize_bits")]
    pub y: BinaryVector,
    pub energy: f64,
    pub sigma: f64,
}

fn serialize_bits<S: serde::Serializer>(
    v: &BinaryVector,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

impl ChannelOutput {
    /// Noise power density `N_0 = 2σ²`.
    pub fn n0(&self) -> f64 {
        2.0 * self.sigma * self.sigma
    }

    pub fn metrics(&self) -> BitMetrics {
        BitMetrics {
            y: self.y.clone(),
            weights: self.phi_abs.clone(),
        }
    }
}

/// Noise standard deviation for a given SNR per information bit.
///
/// With `E = 1`, `E/N_0 = (k/n)·SNR_b` and `σ² = N_0/2 = n / (2·k·SNR_b)`.
pub fn snr_b_to_sigma(snr_b_db: f64, n: usize, k: usize) -> Result<f64> {
    if k == 0 || n < k {
        return Err(Error::InvalidCode(format!(
            "need 1 <= k <= n, got n={n}, k={k}"
        )));
    }
    let snr_b = 10f64.powf(snr_b_db / 10.0);
    Ok((n as f64 / (2.0 * k as f64 * snr_b)).sqrt())
}

/// Sends `v` antipodally with i.i.d. `N(0, σ²)` noise drawn from the
/// stream keyed by `seed`.
pub fn transmit(v: &BinaryVector, sigma: f64, seed: u64) -> ChannelOutput {
    let mut noise = GaussianSource::new(seed);
    let r: Vec<f64> = v
        .iter()
        .map(|bit| {
            let s = if bit == 1 { -1.0 } else { 1.0 };
            s + sigma * noise.sample()
        })
        .collect();
    let metrics = BitMetrics::from_received(&r);
    ChannelOutput {
        phi_abs: metrics.weights,
        y: metrics.y,
        r,
        energy: 1.0,
        sigma,
    }
}

/// `(y ⊕ x)·w`.
pub fn bit_metric(y: u8, x: u8, w: f64) -> Result<f64> {
    if w.is_nan() || w < 0.0 {
        return Err(Error::NegativeWeight(w));
    }
    Ok(if y != x { w } else { 0.0 })
}

/// Sum of bit metrics, accumulated in position order.
pub fn path_metric(x: &BinaryVector, m: &BitMetrics) -> Result<f64> {
    if x.len() != m.len() {
        return Err(Error::Dimension(format!(
            "path of length {} against {} metrics",
            x.len(),
            m.len()
        )));
    }
    let mut diff = x.clone();
    diff.xor_assign(&m.y);
    Ok(diff.ones().fold(0.0, |acc, j| acc + m.weights[j]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn sigma_one_at_half_rate_snr() {
        // (k/n)·SNR_b = 1/2 means SNR_b = n/(2k); with n=2k that is 0 dB
        let sigma = snr_b_to_sigma(0.0, 2, 1).unwrap();
        assert!((sigma - 1.0).abs() < 1e-15);
    }

    #[test]
    fn sigma_for_rm26() {
        // σ² = n / (2·k·10^(dB/10)), evaluated directly
        let s45 = snr_b_to_sigma(4.5, 64, 22).unwrap();
        let expect = 64.0 / (2.0 * 22.0 * 10f64.powf(0.45));
        assert!((s45 * s45 - expect).abs() < 1e-12);
        assert!((s45 * s45 - 0.5161).abs() < 1e-4);
        let s3 = snr_b_to_sigma(3.0, 64, 22).unwrap();
        assert!((s3 * s3 - 64.0 / (2.0 * 22.0 * 10f64.powf(0.3))).abs() < 1e-12);
        assert!((s3 * s3 - 0.7290).abs() < 1e-4);
        assert!(snr_b_to_sigma(3.0, 64, 0).is_err());
    }

    #[test]
    fn noiseless_transmission() {
        let out = transmit(&BinaryVector::zeros(5), 0.0, 7);
        assert_eq!(out.r, vec![1.0; 5]);
        assert!(out.y.is_zero());
        assert_eq!(out.phi_abs, vec![1.0; 5]);

        let v = BinaryVector::from_bits(&[0, 1, 0]);
        let out = transmit(&v, 0.0, 7);
        assert_eq!(out.r[1], -1.0);
        assert_eq!(out.y, v);
    }

    #[test]
    fn transmit_is_deterministic() {
        let v = BinaryVector::from_bits(&[0, 1, 1, 0, 1, 0, 0, 1]);
        let a = transmit(&v, 0.5, 42);
        let b = transmit(&v, 0.5, 42);
        assert_eq!(a, b);
        assert_ne!(a.r, transmit(&v, 0.5, 43).r);
    }

    #[test]
    fn zero_received_value_decides_zero() {
        let m = BitMetrics::from_received(&[0.0, -0.0, -1e-300]);
        assert_eq!(m.hard_decision().to_bits(), vec![0, 0, 1]);
    }

    #[test]
    fn bit_metric_cases() {
        assert_eq!(bit_metric(1, 1, 3.7).unwrap(), 0.0);
        assert_eq!(bit_metric(1, 0, 2.5).unwrap(), 2.5);
        assert_eq!(bit_metric(0, 1, 0.0).unwrap(), 0.0);
        assert!(bit_metric(0, 1, -1.0).is_err());
    }

    #[test]
    fn path_metric_cases() {
        let y = BinaryVector::from_bits(&[1, 0, 0]);
        let m = BitMetrics::new(y.clone(), vec![1.0, 2.0, 3.0]).unwrap();
        assert_eq!(path_metric(&y, &m).unwrap(), 0.0);
        let comp = BinaryVector::from_bits(&[0, 1, 1]);
        assert_eq!(path_metric(&comp, &m).unwrap(), 6.0);
        let x = BinaryVector::from_bits(&[0, 0, 1]);
        assert_eq!(path_metric(&x, &m).unwrap(), 4.0);
        // brute force over all 8 words agrees with the per-bit definition
        for w in 0u8..8 {
            let x = BinaryVector::from_bits(&[w & 1, (w >> 1) & 1, (w >> 2) & 1]);
            let direct: f64 = (0..3)
                .map(|j| bit_metric(y.bit(j), x.bit(j), m.weights()[j]).unwrap())
                .sum();
            assert_eq!(path_metric(&x, &m).unwrap(), direct);
        }
        assert!(path_metric(&BinaryVector::zeros(2), &m).is_err());
    }

    #[test]
    fn metrics_reject_negative_weights() {
        assert!(BitMetrics::new(BinaryVector::zeros(2), vec![1.0, -0.5]).is_err());
        assert!(BitMetrics::new(BinaryVector::zeros(2), vec![1.0]).is_err());
    }

    proptest! {
        #[test]
        fn metric_excess_over_hard_decision(
            r in proptest::collection::vec(-3.0f64..3.0, 1..40),
            flips in proptest::collection::vec(any::<bool>(), 40),
        ) {
            let m = BitMetrics::from_received(&r);
            let mut x = m.hard_decision().clone();
            for (j, &f) in flips.iter().take(r.len()).enumerate() {
                if f { x.flip(j); }
            }
            let dx = path_metric(&x, &m).unwrap();
            prop_assert!(dx >= path_metric(m.hard_decision(), &m).unwrap());
            let differs_on_positive = (0..r.len()).any(|j| x.bit(j) != m.hard_decision().bit(j) && m.weights()[j] > 0.0);
            prop_assert_eq!(dx > 0.0, differs_on_positive);
        }
    }
}

//! Spearman rank correlation with average-rank ties and a two-tailed
//! t-approximation p-value.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use statrs::function::beta::beta_reg;

use crate::error::{Error, Result};

pub const METHOD_T_APPROX: &str = "t-approximation";
pub const METHOD_PERFECT: &str = "t-approximation; |rho| = 1, p set to 0";

/// A named metric over units; units without a value are simply absent.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricSeries {
    pub name: String,
    values: BTreeMap<String, f64>,
}

impl MetricSeries {
    pub fn new(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            values: BTreeMap::new(),
        }
    }

    pub fn from_pairs<I, K>(name: impl Into<String>, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (K, f64)>,
        K: Into<String>,
    {
        let mut series = Self::new(name);
        for (unit, value) in pairs {
            series.insert(unit, value)?;
        }
        Ok(series)
    }

    pub fn insert(&mut self, unit: impl Into<String>, value: f64) -> Result<()> {
        let unit = unit.into();
        if !value.is_finite() {
            return Err(Error::NonFinite {
                series: self.name.clone(),
                unit,
            });
        }
        if self.values.contains_key(&unit) {
            return Err(Error::DuplicateUnit {
                series: self.name.clone(),
                unit,
            });
        }
        self.values.insert(unit, value);
        Ok(())
    }

    pub fn values(&self) -> &BTreeMap<String, f64> {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrelationResult {
    pub x: String,
    pub y: String,
    pub n: usize,
    pub rho: f64,
    pub p_two_tailed: f64,
    pub method_note: String,
}

/// 1-based ranks, ties sharing the mean of the positions they occupy.
pub fn average_ranks(data: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..data.len()).collect();
    order.sort_by(|&a, &b| data[a].partial_cmp(&data[b]).unwrap_or(Ordering::Equal));
    let mut ranks = vec![0.0; data.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i + 1;
        while j < order.len() && data[order[j]] == data[order[i]] {
            j += 1;
        }
        // positions i..j (0-based) share rank mean(i+1..=j)
        let rank = (i + j + 1) as f64 / 2.0;
        for &k in &order[i..j] {
            ranks[k] = rank;
        }
        i = j;
    }
    ranks
}

fn pearson(x: &[f64], y: &[f64]) -> Option<f64> {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        let (dx, dy) = (a - mx, b - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return None;
    }
    Some((sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0))
}

/// Spearman's rho over paired slices (Pearson correlation of average ranks).
pub fn spearman_slices(x: &[f64], y: &[f64]) -> Option<f64> {
    debug_assert_eq!(x.len(), y.len());
    pearson(&average_ranks(x), &average_ranks(y))
}

/// Spearman's rho over the units present in both series, and that count.
pub fn spearman_rho(x: &MetricSeries, y: &MetricSeries) -> Result<(f64, usize)> {
    let (xs, ys): (Vec<f64>, Vec<f64>) = x
        .values
        .iter()
        .filter_map(|(unit, &a)| y.values.get(unit).map(|&b| (a, b)))
        .unzip();
    let n = xs.len();
    if n < 3 {
        return Err(Error::InsufficientOverlap {
            x: x.name.clone(),
            y: y.name.clone(),
            got: n,
        });
    }
    for (series, values) in [(x, &xs), (y, &ys)] {
        if values.iter().all(|v| *v == values[0]) {
            return Err(Error::ConstantSeries(series.name.clone()));
        }
    }
    let rho = spearman_slices(&xs, &ys).ok_or_else(|| Error::Arithmetic("zero rank variance".into()))?;
    Ok((rho, n))
}

/// Two-tailed p-value of `rho` from Student's t with `n - 2` degrees of
/// freedom. `|rho| = 1` returns 0.
pub fn p_two_tailed(rho: f64, n: usize) -> Result<f64> {
    if n < 3 {
        return Err(Error::InsufficientOverlap {
            x: "x".into(),
            y: "y".into(),
            got: n,
        });
    }
    if !rho.is_finite() || rho.abs() > 1.0 {
        return Err(Error::Arithmetic(format!("correlation {rho} outside [-1, 1]")));
    }
    if rho.abs() == 1.0 {
        return Ok(0.0);
    }
    let df = (n - 2) as f64;
    let t2 = rho * rho * df / (1.0 - rho * rho);
    // P(|T| > t) = I_{df / (df + t^2)}(df / 2, 1 / 2)
    Ok(beta_reg(df / 2.0, 0.5, df / (df + t2)).clamp(0.0, 1.0))
}

pub fn correlate(x: &MetricSeries, y: &MetricSeries) -> Result<CorrelationResult> {
    let (rho, n) = spearman_rho(x, y)?;
    let p = p_two_tailed(rho, n)?;
    let method_note = if rho.abs() == 1.0 { METHOD_PERFECT } else { METHOD_T_APPROX };
    Ok(CorrelationResult {
        x: x.name.clone(),
        y: y.name.clone(),
        n,
        rho,
        p_two_tailed: p,
        method_note: method_note.to_string(),
    })
}

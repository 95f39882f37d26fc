use crate::qlaurent::QJetSeries;
use crate::Q;

/// A character as a truncated q-series plus the metadata describing how it was produced.
#[derive(Clone, Debug)]
pub struct CharacterResult {
    pub series: QJetSeries,
    pub algebra: String,
    pub nilpotent: Option<String>,
    pub level: Option<Q>,
    /// Requested q-order, relative to the leading exponent.
    pub q_order: Q,
    pub jet: usize,
    /// Power of u cancelled between numerator and denominator.
    pub u_cancelled: usize,
    pub central_charge: Option<Q>,
    pub central_charge_note: Option<String>,
    pub flags: Vec<String>,
}

impl CharacterResult {
    pub fn new(series: QJetSeries, algebra: &str, q_order: Q) -> Self {
        CharacterResult {
            jet: series.jet(),
            series,
            algebra: algebra.to_string(),
            nilpotent: None,
            level: None,
            q_order,
            u_cancelled: 0,
            central_charge: None,
            central_charge_note: None,
            flags: Vec::new(),
        }
    }

    pub fn lead(&self) -> Option<Q> {
        self.series.valuation()
    }

    pub fn is_zero(&self) -> bool {
        self.series.is_zero()
    }

    pub fn has_integer_coefficients(&self) -> bool {
        self.series.has_integer_coefficients()
    }

    /// Whether the series is exactly the constant 1 within its precision.
    pub fn is_constant_one(&self) -> bool {
        let one = QJetSeries::one(self.series.jet());
        self.series.prec().is_some_and(|p| self.series.agrees_with(&one, p))
    }

    pub(crate) fn flag(&mut self, f: impl Into<String>) {
        self.flags.push(f.into());
    }
}

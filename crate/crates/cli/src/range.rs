use std::fmt;
use std::str::FromStr;

use crate::CliError;

/// Grid `start:stop:count[:log]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxisRange {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
    pub log: bool,
}

impl AxisRange {
    pub fn linear(start: f64, stop: f64, count: usize) -> Result<Self, String> {
        Self::checked(start, stop, count, false)
    }

    pub fn log(start: f64, stop: f64, count: usize) -> Result<Self, String> {
        Self::checked(start, stop, count, true)
    }

    fn checked(start: f64, stop: f64, count: usize, log: bool) -> Result<Self, String> {
        if !start.is_finite() || !stop.is_finite() {
            return Err("range bounds must be finite".into());
        }
        if count < 2 {
            return Err(format!("count must be at least 2, got {count}"));
        }
        if start >= stop {
            return Err(format!("start must be below stop, got {start}:{stop}"));
        }
        if log && start <= 0.0 {
            return Err(format!("log spacing needs a positive start, got {start}"));
        }
        Ok(Self {
            start,
            stop,
            count,
            log,
        })
    }

    /// Grid points; the first and last are exactly `start` and `stop`.
    pub fn points(&self) -> Vec<f64> {
        let last = self.count - 1;
        (0..self.count)
            .map(|i| {
                if i == 0 {
                    return self.start;
                }
                if i == last {
                    return self.stop;
                }
                let t = i as f64 / last as f64;
                if self.log {
                    (self.start.ln() + t * (self.stop.ln() - self.start.ln())).exp()
                } else {
                    self.start + t * (self.stop - self.start)
                }
            })
            .collect()
    }

    pub(crate) fn check_alpha_domain(&self, flag: &str) -> Result<(), CliError> {
        if self.start <= 0.0 || self.stop > 1.0 {
            return Err(CliError::Input(format!(
                "{flag}: alpha must lie in (0, 1], got {self}"
            )));
        }
        Ok(())
    }

    pub(crate) fn check_x_domain(&self, flag: &str) -> Result<(), CliError> {
        if self.start <= 0.0 {
            return Err(CliError::Input(format!(
                "{flag}: x must be positive, got {self}"
            )));
        }
        Ok(())
    }
}

impl fmt::Display for AxisRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.start, self.stop, self.count)?;
        if self.log {
            f.write_str(":log")?;
        }
        Ok(())
    }
}

impl FromStr for AxisRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let log = match parts.as_slice() {
            [_, _, _] => false,
            [_, _, _, "log"] => true,
            [_, _, _, "lin"] => false,
            [_, _, _, other] => {
                return Err(format!(
                    "unknown spacing `{other}`, expected `log` or `lin`"
                ))
            }
            _ => return Err(format!("expected start:stop:count[:log], got `{s}`")),
        };
        let real = |name: &str, v: &str| {
            v.trim()
                .parse::<f64>()
                .map_err(|_| format!("{name} `{v}` is not a number"))
        };
        let start = real("start", parts[0])?;
        let stop = real("stop", parts[1])?;
        let count = parts[2]
            .trim()
            .parse::<usize>()
            .map_err(|_| format!("count `{}` is not a non-negative integer", parts[2]))?;
        Self::checked(start, stop, count, log)
    }
}

//! Angles as decimals or exact multiples of π (`pi/2`, `-3pi/4`, `2*pi`).

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Angle {
    pub value: f64,
    /// Set when the input was a rational multiple of π.
    pub pi_multiple: Option<Ratio<i64>>,
}

impl Angle {
    pub fn from_value(value: f64) -> Self {
        Self { value, pi_multiple: None }
    }
}

impl std::str::FromStr for Angle {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        parse_angle(s)
    }
}

impl std::fmt::Display for Angle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.pi_multiple {
            Some(r) if *r.denom() == 1 => write!(f, "{}pi", r.numer()),
            Some(r) => write!(f, "{}pi/{}", r.numer(), r.denom()),
            None => write!(f, "{}", self.value),
        }
    }
}

fn parse_int(s: &str, whole: &str) -> Result<i64, String> {
    s.parse::<i64>().map_err(|_| format!("bad angle '{whole}'"))
}

pub fn parse_angle(input: &str) -> Result<Angle, String> {
    let s: String = input.chars().filter(|c| !c.is_whitespace()).collect::<String>().to_ascii_lowercase();
    let s = s.replace('π', "pi");
    let Some(at) = s.find("pi") else {
        let v: f64 = s.parse().map_err(|_| format!("bad angle '{input}'"))?;
        if !v.is_finite() {
            return Err(format!("angle '{input}' is not finite"));
        }
        return Ok(Angle::from_value(v));
    };
    let (head, tail) = (&s[..at], &s[at + 2..]);
    let head = head.strip_suffix('*').unwrap_or(head);
    let num = match head {
        "" | "+" => 1,
        "-" => -1,
        h => parse_int(h, input)?,
    };
    let den = match tail {
        "" => 1,
        t => match t.strip_prefix('/') {
            Some(d) => parse_int(d, input)?,
            None => return Err(format!("bad angle '{input}'")),
        },
    };
    if den == 0 {
        return Err(format!("zero denominator in '{input}'"));
    }
    let r = Ratio::new(num, den);
    let value = *r.numer() as f64 * std::f64::consts::PI / *r.denom() as f64;
    Ok(Angle { value, pi_multiple: Some(r) })
}

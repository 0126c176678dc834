//! Number formatting for reports.

use num_bigint::BigInt;
use serde_json::value::RawValue;

pub type Num = Box<RawValue>;

/// 17 significant digits (printf `%.17g` layout, trailing zeros dropped),
/// enough to round-trip any binary64. Non-finite values become `null`.
pub fn format_f64(x: f64) -> String {
    if !x.is_finite() {
        return "null".into();
    }
    if x == 0.0 {
        return if x.is_sign_negative() { "-0.0".into() } else { "0.0".into() };
    }
    let sci = format!("{x:.16e}");
    let exp: i32 = sci[sci.find('e').expect("exponent") + 1..].parse().expect("exponent digits");
    if (-4..17).contains(&exp) {
        trim_zeros(&format!("{:.*}", (16 - exp) as usize, x))
    } else {
        let (mantissa, e) = sci.split_at(sci.find('e').expect("exponent"));
        format!("{}{e}", trim_zeros(mantissa))
    }
}

fn trim_zeros(s: &str) -> String {
    match s.find('.') {
        Some(dot) => {
            let t = s.trim_end_matches('0');
            if t.len() == dot + 1 { format!("{t}0") } else { t.to_owned() }
        }
        None => format!("{s}.0"),
    }
}

pub fn num(x: f64) -> Num {
    RawValue::from_string(format_f64(x)).expect("valid JSON number")
}

pub fn big(n: &BigInt) -> Num {
    RawValue::from_string(n.to_string()).expect("valid JSON integer")
}

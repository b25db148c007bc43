//! Two-decimal reporting of objective values.

/// Format `value` with exactly two fractional digits, rounding half-up.
///
/// The rounding is performed in decimal on the shortest string that
/// round-trips the float (Rust's `Display`), so e.g. `2.005` — whose
/// nearest double is fractionally below 2.005 — still reports as
/// `"2.01"`. Values whose shortest representation genuinely falls below
/// the tie (like `2.00499`) round down; that is the usual binary-float
/// caveat of decimal reporting.
pub fn report_round(value: f64) -> String {
    assert!(value.is_finite(), "report_round needs a finite value");
    let s = format!("{value}");
    let neg = s.starts_with('-');
    let body = s.trim_start_matches('-');
    let (int_s, frac_s) = body.split_once('.').unwrap_or((body, ""));
    let mut frac: Vec<u8> = frac_s.bytes().collect();
    while frac.len() < 3 {
        frac.push(b'0');
    }
    let round_up = frac[2] >= b'5';
    let mut digits: Vec<u8> = int_s.bytes().chain(frac[..2].iter().copied()).collect();
    if round_up {
        let mut i = digits.len();
        loop {
            if i == 0 {
                digits.insert(0, b'1');
                break;
            }
            i -= 1;
            if digits[i] == b'9' {
                digits[i] = b'0';
            } else {
                digits[i] += 1;
                break;
            }
        }
    }
    let split = digits.len() - 2;
    let int_out = if split == 0 {
        "0"
    } else {
        std::str::from_utf8(&digits[..split]).unwrap()
    };
    let frac_out = std::str::from_utf8(&digits[split..]).unwrap();
    let sign = if neg && digits.iter().any(|&d| d != b'0') {
        "-"
    } else {
        ""
    };
    format!("{sign}{int_out}.{frac_out}")
}

#[cfg(test)]
mod tests {
    use super::report_round;

    #[test]
    fn keeps_exact_two_decimals() {
        assert_eq!(report_round(159.5700001), "159.57");
        assert_eq!(report_round(159.57), "159.57");
    }

    #[test]
    fn half_up_on_shortest_representation() {
        assert_eq!(report_round(2.005), "2.01");
        assert_eq!(report_round(2.0049), "2.00");
        assert_eq!(report_round(0.005), "0.01");
    }

    #[test]
    fn integers_gain_a_fraction() {
        assert_eq!(report_round(3.0), "3.00");
        assert_eq!(report_round(0.0), "0.00");
    }

    #[test]
    fn carries_across_nines() {
        assert_eq!(report_round(9.995), "10.00");
        assert_eq!(report_round(99.999), "100.00");
    }

    #[test]
    fn negatives_round_away_from_zero() {
        assert_eq!(report_round(-2.005), "-2.01");
        assert_eq!(report_round(-0.001), "0.00");
    }
}

//! The function-spec mini-language: `poly:c0,c1,..`, `exp`, `exp:rate`,
//! `rat:n0,n1,../d0,d1,..` (real coefficients, ascending powers).

use qspectra_core::IntrinsicSliceFunction;

use crate::CliError;

fn coeffs(list: &str, what: &str) -> Result<Vec<f64>, CliError> {
    let out = list
        .split(',')
        .map(|c| {
            let c = c.trim();
            c.parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| CliError::Parse(format!("{what}: bad coefficient {c:?}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(out)
}

/// Parses a function spec into an intrinsic slice function.
pub fn parse(spec: &str) -> Result<IntrinsicSliceFunction, CliError> {
    let spec = spec.trim();
    let (head, arg) = match spec.split_once(':') {
        Some((h, a)) => (h, Some(a)),
        None => (spec, None),
    };
    match (head, arg) {
        ("exp", None) => Ok(IntrinsicSliceFunction::exp()),
        ("exp", Some(rate)) => {
            let rate = coeffs(rate, "exp rate")?;
            if rate.len() != 1 {
                return Err(CliError::Parse("exp takes a single rate".into()));
            }
            Ok(IntrinsicSliceFunction::exp_scaled(1.0, rate[0]))
        }
        ("poly", Some(list)) => {
            IntrinsicSliceFunction::poly(&coeffs(list, "poly")?).map_err(|e| CliError::Parse(e.to_string()))
        }
        ("rat", Some(body)) => {
            let (num, den) = body
                .split_once('/')
                .ok_or_else(|| CliError::Parse("rat expects <num>/<den>".into()))?;
            IntrinsicSliceFunction::rational(&coeffs(num, "rat numerator")?, &coeffs(den, "rat denominator")?)
                .map_err(|e| CliError::Parse(e.to_string()))
        }
        _ => Err(CliError::Parse(format!(
            "unknown function spec {spec:?} (expected poly:.., exp, exp:rate or rat:../..)"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use qspectra_core::Complex64 as C;

    fn at(f: &IntrinsicSliceFunction, z: C) -> C {
        f.eval_complex(z).unwrap()
    }

    #[test]
    fn families() {
        let z = C::new(0.3, -0.7);
        assert!((at(&parse("poly:1,0,2").unwrap(), z) - (1.0 + 2.0 * z * z)).norm() < 1e-15);
        assert!((at(&parse("exp").unwrap(), z) - z.exp()).norm() < 1e-15);
        assert!((at(&parse("exp:0.5").unwrap(), z) - (0.5 * z).exp()).norm() < 1e-15);
        let r = parse("rat:1,1/2,0,1").unwrap();
        assert!((at(&r, z) - (1.0 + z) / (2.0 + z * z)).norm() < 1e-14);
    }

    #[test]
    fn rejects_malformed() {
        for bad in ["", "poly:", "poly:1,x", "sin", "exp:1,2", "rat:1,2", "rat:1/0", "poly:nan"] {
            assert!(matches!(parse(bad), Err(CliError::Parse(_))), "{bad}");
        }
    }
}

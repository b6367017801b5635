//! Text renderings of lattice values and cache exports.

use crate::cache::{format_rational, CacheFile};
use pvi_tau::exactfield::{Basis, FactoredForm};
use std::fmt::Write;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum ValueFormat {
    /// Reduced rational function.
    Pretty,
    /// Lead and ascending integer coefficient lists of numerator and denominator.
    Coeffs,
    /// Lead, exponent at each cusp, and the remaining polynomial.
    Factored,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum ExportFormat {
    JsonLike,
    LatexTable,
}

fn list<T: ToString>(xs: &[T]) -> String {
    let v: Vec<String> = xs.iter().map(T::to_string).collect();
    format!("[{}]", v.join(", "))
}

/// Cusps in the order used for display.
const CUSP_ORDER: [(Basis, &str); 5] =
    [(Basis::Z, "0"), (Basis::ZMinus1, "1"), (Basis::ZPlus1, "-1"), (Basis::ZPlus2, "-2"), (Basis::TwoZPlus1, "-1/2")];

pub fn render_value(v: &FactoredForm, format: ValueFormat) -> String {
    match format {
        ValueFormat::Pretty => format!("{}\n", v.to_rational_function()),
        ValueFormat::Coeffs => {
            let f = v.to_rational_function();
            format!(
                "lead: {}\nnumerator: {}\ndenominator: {}\n",
                format_rational(f.lead()),
                list(f.numerator().coeffs()),
                list(f.denominator().coeffs())
            )
        }
        ValueFormat::Factored => {
            let exps: Vec<String> = CUSP_ORDER.iter().map(|(b, name)| format!("{name}:{}", v.exponent(*b))).collect();
            format!(
                "lead: {}\nexponents: {{{}}}\nremainder: {}\n",
                v.lead(),
                exps.join(", "),
                list(v.remainder().coeffs())
            )
        }
    }
}

pub fn render_export(cache: &CacheFile, format: ExportFormat) -> String {
    match format {
        ExportFormat::JsonLike => cache.to_json(),
        ExportFormat::LatexTable => {
            let mut s = String::new();
            s.push_str("\\begin{tabular}{lrrrrrrr}\n");
            s.push_str("$k$ & lead & $\\zeta$ & $\\zeta-1$ & $\\zeta+1$ & $\\zeta+2$ & $2\\zeta+1$ & $\\deg p$ \\\\\n\\hline\n");
            for e in &cache.entries {
                let [a, b, c, d] = e.k;
                let x = &e.cusp_exponents;
                let lead = match e.lead.strip_suffix("/1") {
                    Some(p) => p.to_string(),
                    None => format!("${}$", e.lead),
                };
                let _ = writeln!(
                    s,
                    "$({a},{b},{c},{d})$ & {lead} & {} & {} & {} & {} & {} & {} \\\\",
                    x.zero,
                    x.one,
                    x.minus_one,
                    x.minus_two,
                    x.minus_half,
                    e.remainder.len().saturating_sub(1)
                );
            }
            s.push_str("\\end{tabular}\n");
            s
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use pvi_tau::exactfield::rint;

    #[test]
    fn factored_seed() {
        let v = FactoredForm::monomial(rint(-2), [2, 2, 1, -2, 1]);
        assert_eq!(
            render_value(&v, ValueFormat::Factored),
            "lead: -2\nexponents: {0:2, 1:1, -1:2, -2:-2, -1/2:1}\nremainder: [1]\n"
        );
    }

    #[test]
    fn pretty_one() {
        assert_eq!(render_value(&FactoredForm::one(), ValueFormat::Pretty), "1\n");
    }

    #[test]
    fn empty_table() {
        let t = render_export(&CacheFile::empty(), ExportFormat::LatexTable);
        assert!(t.starts_with("\\begin{tabular}") && t.ends_with("\\end{tabular}\n"));
    }
}

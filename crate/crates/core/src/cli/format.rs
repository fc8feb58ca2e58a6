//! CSV and JSON writers. Numbers are rounded to 12 significant digits and
//! printed in their shortest round-trip form, so repeated runs are
//! byte-identical.

use std::io::{self, Write};

use serde::Serialize;

use crate::greens::LimitCheckReport;
use crate::spectra::SpectrumRow;

pub fn number(x: f64) -> String {
    if !x.is_finite() {
        return if x.is_nan() {
            "NaN".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    let rounded: f64 = format!("{x:.11e}").parse().expect("formatted float parses");
    format!("{rounded:?}")
}

fn optional(x: Option<f64>) -> String {
    x.map(number).unwrap_or_default()
}

pub fn spectrum_csv(
    rows: &[SpectrumRow],
    with_offresonant: bool,
    out: &mut impl Write,
) -> io::Result<()> {
    write!(out, "omega_over_ref,u_resonant,u_resonant_no_lf,g,g_no_lf")?;
    if with_offresonant {
        write!(out, ",u_offresonant")?;
    }
    writeln!(out)?;
    for r in rows {
        write!(
            out,
            "{},{},{},{},{}",
            number(r.omega_a),
            number(r.u_resonant),
            optional(r.u_resonant_no_lf),
            number(r.g),
            number(r.g_no_lf)
        )?;
        if with_offresonant {
            write!(out, ",{}", optional(r.u_offresonant))?;
        }
        writeln!(out)?;
    }
    Ok(())
}

pub fn enhancement_csv(rows: &[SpectrumRow], out: &mut impl Write) -> io::Result<()> {
    writeln!(out, "omega_over_ref,g,g_no_lf")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{}",
            number(r.omega_a),
            number(r.g),
            number(r.g_no_lf)
        )?;
    }
    Ok(())
}

#[derive(Debug, Serialize)]
pub struct EnhancementRecord {
    pub omega_over_ref: f64,
    pub g: f64,
    pub g_no_lf: f64,
}

impl From<&SpectrumRow> for EnhancementRecord {
    fn from(r: &SpectrumRow) -> Self {
        Self {
            omega_over_ref: r.omega_a,
            g: r.g,
            g_no_lf: r.g_no_lf,
        }
    }
}

pub fn limit_csv(report: &LimitCheckReport, out: &mut impl Write) -> io::Result<()> {
    writeln!(out, "scale,component,ratio_re,ratio_im")?;
    for r in &report.ratios {
        writeln!(
            out,
            "{},{},{},{}",
            number(r.scale),
            r.label(),
            number(r.ratio.re),
            number(r.ratio.im)
        )?;
    }
    Ok(())
}

pub fn json<T: Serialize + ?Sized>(value: &T, out: &mut impl Write) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)
}

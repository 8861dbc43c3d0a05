use std::fmt::Write;

use crate::berkline::{Disk, DiskKind, Spectrum};
use crate::valcore::Exponent;
use crate::vary::Sample;

fn disk_line(d: &Disk) -> String {
    match d.kind() {
        DiskKind::Closed => format!("[ c={} rexp={} closed ]", d.center(), d.radius_exp()),
        DiskKind::ClosureOpen => format!("( c={} rexp={} closure-open ]ˢ", d.center(), d.radius_exp()),
    }
}

/// One line per disk; disks of a component with several members sit under a
/// shared header.
pub fn render_dendrogram(s: &Spectrum) -> String {
    let mut out = String::new();
    for (k, comp) in s.components().iter().enumerate() {
        if let [i] = comp.as_slice() {
            writeln!(out, "{}", disk_line(&s.disks()[*i])).unwrap();
            continue;
        }
        let rexp = Exponent::min_of(comp.iter().map(|i| s.disks()[*i].radius_exp()));
        writeln!(out, "+ component {k} ({} disks, rexp={rexp})", comp.len()).unwrap();
        for i in comp {
            writeln!(out, "  {}", disk_line(&s.disks()[*i])).unwrap();
        }
    }
    out
}

const CELL: f64 = 160.0;

fn svg_header(out: &mut String, w: f64, h: f64) {
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w:.0}" height="{h:.0}" viewBox="0 0 {w:.0} {h:.0}">"#
    )
    .unwrap();
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Circles scaled by `-log` radius, one column per component; closure-open
/// disks are dashed.
pub fn render_svg(s: &Spectrum) -> String {
    let finite: Vec<f64> = s.disks().iter().map(|d| d.radius_exp().to_f64()).collect();
    let top = finite.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let px = |e: f64| (12.0 + 16.0 * (top - e)).min(CELL / 2.0 - 8.0);
    let comps = s.components();
    let mut out = String::new();
    svg_header(&mut out, CELL * comps.len() as f64, CELL + 40.0);
    for (k, comp) in comps.iter().enumerate() {
        let cx = CELL * k as f64 + CELL / 2.0;
        writeln!(out, r#"  <g class="component">"#).unwrap();
        for i in comp {
            let d = &s.disks()[*i];
            let (class, dash) = match d.kind() {
                DiskKind::Closed => ("closed", ""),
                DiskKind::ClosureOpen => ("closure-open", r#" stroke-dasharray="4 3""#),
            };
            writeln!(
                out,
                r#"    <circle class="{class}" cx="{cx:.1}" cy="{:.1}" r="{:.1}" fill="none" stroke="black"{dash}/>"#,
                CELL / 2.0,
                px(finite[*i]),
            )
            .unwrap();
        }
        let labels: Vec<String> = comp
            .iter()
            .map(|i| format!("c={} rexp={}", s.disks()[*i].center(), s.disks()[*i].radius_exp()))
            .collect();
        writeln!(
            out,
            r#"    <text x="{cx:.1}" y="{:.1}" text-anchor="middle" font-size="11">{}</text>"#,
            CELL + 20.0,
            escape(&labels.join("; "))
        )
        .unwrap();
        writeln!(out, "  </g>").unwrap();
    }
    out.push_str("</svg>\n");
    out
}

/// Strip chart of the enclosing radius exponent against the sample index,
/// one tick per sample.
pub fn render_vary_svg(samples: &[Sample]) -> String {
    let step = 40.0;
    let height = 200.0;
    let ys: Vec<f64> = samples.iter().map(|s| s.spectrum.enclosing_radius_exp().to_f64()).collect();
    let lo = ys.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = ys.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let span = if hi > lo { hi - lo } else { 1.0 };
    // larger radii (smaller exponents) are drawn higher
    let y = |e: f64| 20.0 + (height - 40.0) * (e - lo) / span;
    let mut out = String::new();
    svg_header(&mut out, step * (samples.len() as f64 + 1.0), height + 20.0);
    let points: Vec<String> = ys
        .iter()
        .enumerate()
        .map(|(i, e)| format!("{:.1},{:.1}", step * (i as f64 + 1.0), y(*e)))
        .collect();
    writeln!(
        out,
        r#"  <polyline class="radius" points="{}" fill="none" stroke="black"/>"#,
        points.join(" ")
    )
    .unwrap();
    for (i, (s, e)) in samples.iter().zip(&ys).enumerate() {
        let x = step * (i as f64 + 1.0);
        writeln!(
            out,
            r#"  <line class="tick type-{}" x1="{x:.1}" y1="{:.1}" x2="{x:.1}" y2="{:.1}" stroke="black"><title>rho={} rexp={}</title></line>"#,
            s.point_type,
            y(*e) - 4.0,
            y(*e) + 4.0,
            s.rho,
            s.spectrum.enclosing_radius_exp(),
        )
        .unwrap();
    }
    out.push_str("</svg>\n");
    out
}

/// Text table of a vary run: one header per sample followed by its dendrogram.
pub fn render_vary_ascii(samples: &[Sample]) -> String {
    let mut out = String::new();
    for s in samples {
        writeln!(out, "rho={} type={}", s.rho, s.point_type).unwrap();
        for line in render_dendrogram(&s.spectrum).lines() {
            writeln!(out, "  {line}").unwrap();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::valcore::{FieldSpec, Scalar};

    fn e(x: &str) -> Exponent {
        x.parse().unwrap()
    }

    fn s(x: &str) -> Scalar {
        x.parse().unwrap()
    }

    #[test]
    fn dendrogram_lines() {
        let f = FieldSpec::p_adic(2).unwrap();
        let one = Spectrum::single(&f, Disk::closed(s("0"), e("1"))).unwrap();
        assert_eq!(render_dendrogram(&one), "[ c=0 rexp=1 closed ]\n");

        let f3 = FieldSpec::p_adic(3).unwrap();
        let two = Spectrum::normalize(&f3, [Disk::closed(s("1"), e("1/2")), Disk::closed(s("0"), e("1/2"))]).unwrap();
        let text = render_dendrogram(&two);
        assert_eq!(text.lines().count(), 2);
        assert!(text.lines().all(|l| l.starts_with('[')));
        assert_eq!(text, render_dendrogram(&two));

        let z = FieldSpec::equal_char_zero();
        let open = Spectrum::single(&z, Disk::closure_open(s("0"), e("0"))).unwrap();
        assert_eq!(render_dendrogram(&open), "( c=0 rexp=0 closure-open ]ˢ\n");
    }

    #[test]
    fn touching_closures_share_a_header() {
        let f = FieldSpec::trivial();
        let sp = Spectrum::normalize(&f, [Disk::closure_open(s("0"), e("0")), Disk::closure_open(s("1"), e("0"))]).unwrap();
        assert_eq!(
            render_dendrogram(&sp),
            "+ component 0 (2 disks, rexp=0)\n  ( c=0 rexp=0 closure-open ]ˢ\n  ( c=1 rexp=0 closure-open ]ˢ\n"
        );
    }

    #[test]
    fn svg_circles() {
        let f = FieldSpec::p_adic(2).unwrap();
        let one = Spectrum::single(&f, Disk::closed(s("0"), e("1"))).unwrap();
        let svg = render_svg(&one);
        assert_eq!(svg.matches("<circle").count(), 1);
        assert_eq!(svg, render_svg(&one));
        let merged = Spectrum::normalize(&f, [Disk::closed(s("0"), e("1")), Disk::closed(s("2"), e("1"))]).unwrap();
        assert_eq!(render_svg(&merged).matches("<circle").count(), 1);
    }
}

//! The shipped row configurations and their certificates.

use super::format::{Certificate, CertificateFile, Color, ConfigPoint, Configuration};
use super::layout::decompose;
use crate::error::Result;
use crate::geometry::{ContainerSquare, ExactPoint};
use crate::numerics::Exact;

fn half(n: i64) -> Exact {
    Exact::from_ratio(n, 2)
}

/// Row `k` (from 1) of a row grid: `full` rows hold `1..side-1`, the
/// others `1/2..side-1/2`.
fn row_points(color: Color, k: usize, y: &Exact, side: i64, full: bool) -> Vec<ConfigPoint> {
    let xs: Vec<Exact> = if full {
        (1..side).map(Exact::from_int).collect()
    } else {
        (0..side).map(|i| half(2 * i + 1)).collect()
    };
    let tag = match color {
        Color::Red => "r",
        Color::Blue => "b",
    };
    xs.into_iter()
        .enumerate()
        .map(|(j, x)| ConfigPoint {
            id: format!("{tag}{k}.{}", j + 1),
            pos: ExactPoint::new(x, y.clone()),
            color,
            row: Some(k),
        })
        .collect()
}

/// `sqrt(2) - 1/2`, the bottom row height of the 6x6 configuration.
pub fn edge_gap() -> Exact {
    Exact::sqrt_int(2) - half(1)
}

/// Row heights of the 33-point configuration.
pub fn six_row_heights() -> Vec<Exact> {
    let step = Exact::sqrt_int(3) / Exact::from_int(2);
    (0..6).map(|k| edge_gap() + Exact::from_int(k) * &step).collect()
}

/// 33 red points in `[0,6]^2`: odd rows of five, even rows of six.
pub fn fig1_configuration() -> Configuration {
    let mut points = Vec::new();
    for (k, y) in six_row_heights().iter().enumerate() {
        points.extend(row_points(Color::Red, k + 1, y, 6, k % 2 == 0));
    }
    Configuration { container: ContainerSquare::new(Exact::from_int(6)).expect("positive"), points }
}

/// Reflection `y -> side - y` recoloured; rows renumbered from the bottom.
pub fn mirror_configuration(config: &Configuration, color: Color) -> Configuration {
    let side = &config.container.side;
    let nrows = config.points.iter().filter_map(|p| p.row).max().unwrap_or(0);
    let tag = match color {
        Color::Red => "r",
        Color::Blue => "b",
    };
    let mut points: Vec<ConfigPoint> = config
        .points
        .iter()
        .map(|p| {
            let row = p.row.map(|r| nrows + 1 - r);
            let suffix = p.id.split('.').nth(1).unwrap_or("1");
            ConfigPoint {
                id: format!("{tag}{}.{suffix}", row.unwrap_or(0)),
                pos: ExactPoint::new(p.pos.x.clone(), side - &p.pos.y),
                color,
                row,
            }
        })
        .collect();
    points.sort_by(|a, b| a.row.cmp(&b.row).then(a.pos.x.cmp(&b.pos.x)));
    Configuration { container: config.container.clone(), points }
}

/// Rows `0.9, 1.7, ..., 4.1` over `{0.5, 1, ..., 4.5}`: red takes the
/// integer abscissae on odd rows, blue the rest.
pub fn fig3_configuration() -> Configuration {
    let mut points = Vec::new();
    for color in [Color::Red, Color::Blue] {
        for k in 0..5 {
            let y = Exact::from_ratio(9, 10) + Exact::from_ratio(8 * k, 10);
            let full = (k % 2 == 0) == (color == Color::Red);
            points.extend(row_points(color, k as usize + 1, &y, 5, full));
        }
    }
    Configuration { container: ContainerSquare::new(Exact::from_int(5)).expect("positive"), points }
}

pub fn certificate_file(name: &str, target: Option<usize>, config: Configuration, colors: &[Color]) -> Result<CertificateFile> {
    let mut certificates = Vec::new();
    for &color in colors {
        let applications = decompose(&config, color)?;
        certificates.push(Certificate { config: config.clone(), color, applications });
    }
    Ok(CertificateFile { name: name.into(), target, config, certificates })
}

pub fn fig1() -> Result<CertificateFile> {
    certificate_file("fig1", None, fig1_configuration(), &[Color::Red])
}

pub fn fig2_red() -> Result<CertificateFile> {
    certificate_file("fig2_red", Some(33), fig1_configuration(), &[Color::Red])
}

pub fn fig2_blue() -> Result<CertificateFile> {
    certificate_file("fig2_blue", Some(33), mirror_configuration(&fig1_configuration(), Color::Blue), &[Color::Blue])
}

pub fn fig3() -> Result<CertificateFile> {
    certificate_file("fig3", Some(22), fig3_configuration(), &[Color::Red, Color::Blue])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificates::verify_file;
    use crate::lemmas::LemmaKind;

    #[test]
    fn fig1_has_68_regions_and_verifies() {
        let f = fig1().unwrap();
        let apps = &f.certificates[0].applications;
        assert_eq!(f.config.points.len(), 33);
        assert_eq!(apps.len(), 68);
        assert_eq!(apps.iter().filter(|a| a.kind == LemmaKind::Triangle).count(), 45);
        assert_eq!(apps.iter().filter(|a| a.kind == LemmaKind::QuadEdge).count(), 10);
        let (v, _) = verify_file(&f).unwrap();
        assert!(v.is_true());
    }

    #[test]
    fn fig3_both_colours_verify() {
        let f = fig3().unwrap();
        assert_eq!(f.config.count(Color::Red), 22);
        assert_eq!(f.config.count(Color::Blue), 23);
        assert_eq!(f.certificate(Color::Red).unwrap().applications.len(), 46);
        let (v, reports) = verify_file(&f).unwrap();
        assert!(v.is_true(), "{:?}", reports.iter().map(|r| &r.failure).collect::<Vec<_>>());
    }

    #[test]
    fn mirrored_blue_verifies() {
        let f = fig2_blue().unwrap();
        assert_eq!(f.config.count(Color::Blue), 33);
        assert!(verify_file(&f).unwrap().0.is_true());
    }
}

//! Quasimomentum paths for band sweeps.

use std::f64::consts::PI;

/// Parses a real number, optionally a multiple of π: `pi`, `-pi/2`,
/// `2pi/3`, `2*pi/3`, `0.5`.
pub fn parse_angle(s: &str) -> Result<f64, String> {
    let t = s.trim();
    let bad = || format!("invalid angle '{s}'");
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (t, None),
    };
    let value = match num.find("pi") {
        Some(at) if num[at + 2..].is_empty() => {
            let coef = num[..at].trim_end_matches('*').trim();
            let c = match coef {
                "" | "+" => 1.0,
                "-" => -1.0,
                c => c.parse::<f64>().map_err(|_| bad())?,
            };
            c * PI
        }
        Some(_) => return Err(bad()),
        None => num.parse::<f64>().map_err(|_| bad())?,
    };
    let value = match den {
        Some(d) => {
            let d: f64 = d.parse().map_err(|_| bad())?;
            if d == 0.0 {
                return Err(bad());
            }
            value / d
        }
        None => value,
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(bad())
    }
}

/// Waypoints separated by `;`, components by `,`.
pub fn parse_path(s: &str, dim: usize) -> Result<Vec<Vec<f64>>, String> {
    let points: Vec<Vec<f64>> = s
        .split(';')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| p.split(',').map(parse_angle).collect::<Result<Vec<_>, _>>())
        .collect::<Result<_, _>>()?;
    if points.is_empty() {
        return Err("empty path".into());
    }
    if let Some(p) = points.iter().find(|p| p.len() != dim) {
        return Err(format!("waypoint has {} components, graph has dimension {dim}", p.len()));
    }
    Ok(points)
}

/// Piecewise-linear sampling with `per_segment` points per segment
/// (endpoints included, shared endpoints emitted once). Returns
/// `(arclength, ϑ)` pairs.
pub fn sample_path(points: &[Vec<f64>], per_segment: usize) -> Vec<(f64, Vec<f64>)> {
    if points.len() == 1 {
        return vec![(0.0, points[0].clone())];
    }
    let steps = per_segment.max(2) - 1;
    let mut out = Vec::new();
    let mut s0 = 0.0;
    for (seg, w) in points.windows(2).enumerate() {
        let len = w[0].iter().zip(&w[1]).map(|(a, b)| (b - a) * (b - a)).sum::<f64>().sqrt();
        let first = if seg == 0 { 0 } else { 1 };
        for i in first..=steps {
            let t = i as f64 / steps as f64;
            let theta = w[0].iter().zip(&w[1]).map(|(a, b)| a + t * (b - a)).collect();
            out.push((s0 + t * len, theta));
        }
        s0 += len;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn angles() {
        assert_eq!(parse_angle("0").unwrap(), 0.0);
        assert_eq!(parse_angle("pi").unwrap(), PI);
        assert_eq!(parse_angle("-pi").unwrap(), -PI);
        assert_eq!(parse_angle("2pi/3").unwrap(), 2.0 * PI / 3.0);
        assert_eq!(parse_angle("2*pi/3").unwrap(), 2.0 * PI / 3.0);
        assert_eq!(parse_angle(" pi / 2 ").unwrap(), PI / 2.0);
        assert_eq!(parse_angle("1.5").unwrap(), 1.5);
        assert!(parse_angle("pie").is_err());
        assert!(parse_angle("pi/0").is_err());
        assert!(parse_angle("").is_err());
    }

    #[test]
    fn paths() {
        let p = parse_path("0,0; 2pi/3,4pi/3", 2).unwrap();
        assert_eq!(p[1], vec![2.0 * PI / 3.0, 4.0 * PI / 3.0]);
        assert!(parse_path("", 1).is_err());
        assert!(parse_path("0,0", 1).is_err());
    }

    #[test]
    fn sampling_shares_waypoints() {
        let p = parse_path("0;pi;0", 1).unwrap();
        let s = sample_path(&p, 5);
        assert_eq!(s.len(), 9);
        assert_eq!(s[4].1, vec![PI]);
        assert!((s[8].0 - 2.0 * PI).abs() < 1e-15);
    }
}

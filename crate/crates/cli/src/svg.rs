//! Minimal SVG writer: polylines, markers and a ray, in a fixed window of the
//! upper half-plane. Output is byte-for-byte deterministic.

use std::fmt::Write as _;

use anyhow::{bail, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PlotSpec {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
    pub width: u32,
    pub height: u32,
}

impl PlotSpec {
    pub fn new(window: [f64; 4], width: u32, height: u32) -> Result<Self> {
        let [x_min, x_max, y_min, y_max] = window;
        if !window.iter().all(|v| v.is_finite()) {
            bail!("window bounds must be finite");
        }
        if y_min < 0.0 {
            bail!("window must lie in the upper half-plane (y_min >= 0)");
        }
        if !(x_max > x_min && y_max > y_min) {
            bail!("window is empty");
        }
        if width == 0 || height == 0 {
            bail!("image size must be positive");
        }
        Ok(Self {
            x_min,
            x_max,
            y_min,
            y_max,
            width,
            height,
        })
    }

    pub fn to_pixel(self, x: f64, y: f64) -> (f64, f64) {
        let px = (x - self.x_min) / (self.x_max - self.x_min) * self.width as f64;
        let py = self.height as f64 - (y - self.y_min) / (self.y_max - self.y_min) * self.height as f64;
        (px, py)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Style {
    Solid,
    Dashed,
    Thick,
}

impl Style {
    fn attrs(self) -> &'static str {
        match self {
            Style::Solid => r#"stroke="black" stroke-width="1.5""#,
            Style::Dashed => r#"stroke="black" stroke-width="1" stroke-dasharray="6 4""#,
            Style::Thick => r#"stroke="black" stroke-width="3""#,
        }
    }
}

pub struct Svg {
    spec: PlotSpec,
    body: String,
}

/// Pixel coordinates keep three decimals.
fn px(v: f64) -> String {
    format!("{v:.3}")
}

impl Svg {
    pub fn new(spec: PlotSpec) -> Self {
        let mut s = Self {
            spec,
            body: String::new(),
        };
        // the real axis, if visible
        if spec.y_min == 0.0 {
            let (x0, y0) = spec.to_pixel(spec.x_min, 0.0);
            let (x1, _) = spec.to_pixel(spec.x_max, 0.0);
            let _ = writeln!(
                s.body,
                r##"<line class="axis" x1="{}" y1="{}" x2="{}" y2="{}" stroke="#888" stroke-width="1"/>"##,
                px(x0),
                px(y0),
                px(x1),
                px(y0)
            );
        }
        s
    }

    /// One `<polyline>` per run of finite points. `data` becomes `data-*`
    /// attributes.
    pub fn polyline(&mut self, points: &[(f64, f64)], style: Style, class: &str, data: &[(&str, String)]) {
        let extra: String = data
            .iter()
            .map(|(k, v)| format!(r#" data-{k}="{v}""#))
            .collect();
        for run in points.split(|(x, y)| !(x.is_finite() && y.is_finite())) {
            if run.len() < 2 {
                continue;
            }
            let coords: Vec<String> = run
                .iter()
                .map(|&(x, y)| {
                    let (a, b) = self.spec.to_pixel(x, y);
                    format!("{},{}", px(a), px(b))
                })
                .collect();
            let _ = writeln!(
                self.body,
                r#"<polyline class="{class}"{extra} fill="none" {} points="{}"/>"#,
                style.attrs(),
                coords.join(" ")
            );
        }
    }

    pub fn marker(&mut self, x: f64, y: f64, class: &str) {
        let (a, b) = self.spec.to_pixel(x, y);
        let _ = writeln!(
            self.body,
            r#"<circle class="{class}" data-x="{x:.16e}" data-y="{y:.16e}" cx="{}" cy="{}" r="4" fill="black"/>"#,
            px(a),
            px(b)
        );
    }

    pub fn finish(&self, root_data: &[(&str, String)]) -> String {
        let s = &self.spec;
        let extra: String = root_data
            .iter()
            .map(|(k, v)| format!(r#" data-{k}="{v}""#))
            .collect();
        format!(
            concat!(
                "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n",
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" ",
                "viewBox=\"0 0 {w} {h}\" data-window=\"{x0:e} {x1:e} {y0:e} {y1:e}\"{extra}>\n",
                "<rect width=\"{w}\" height=\"{h}\" fill=\"white\"/>\n",
                "{body}</svg>\n"
            ),
            w = s.width,
            h = s.height,
            x0 = s.x_min,
            x1 = s.x_max,
            y0 = s.y_min,
            y1 = s.y_max,
            extra = extra,
            body = self.body
        )
    }
}

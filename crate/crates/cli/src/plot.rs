//! Minimal grayscale rasterizer for the figure images.

pub const WHITE: u8 = 255;
pub const BLACK: u8 = 0;

#[derive(Clone, Debug)]
pub struct Canvas {
    pub width: usize,
    pub height: usize,
    pub pixels: Vec<u8>,
}

impl Canvas {
    pub fn new(width: usize, height: usize) -> Self {
        Canvas {
            width,
            height,
            pixels: vec![WHITE; width * height],
        }
    }

    pub fn set(&mut self, x: usize, y: usize, v: u8) {
        if x < self.width && y < self.height {
            self.pixels[y * self.width + x] = v;
        }
    }

    pub fn fill_rect(&mut self, x0: usize, y0: usize, x1: usize, y1: usize, v: u8) {
        for y in y0..y1.min(self.height) {
            for x in x0..x1.min(self.width) {
                self.pixels[y * self.width + x] = v;
            }
        }
    }

    /// Keeps the darker of the two pixels everywhere `other` overlaps.
    pub fn darken(&mut self, other: &Canvas) {
        for y in 0..other.height.min(self.height) {
            for x in 0..other.width.min(self.width) {
                let v = other.pixels[y * other.width + x];
                let p = &mut self.pixels[y * self.width + x];
                *p = (*p).min(v);
            }
        }
    }

    /// Copies `other` with its top-left corner at `(x, y)`.
    pub fn blit(&mut self, other: &Canvas, x: usize, y: usize) {
        for r in 0..other.height {
            for c in 0..other.width {
                self.set(x + c, y + r, other.pixels[r * other.width + c]);
            }
        }
    }

    fn line(&mut self, (x0, y0): (i64, i64), (x1, y1): (i64, i64), v: u8) {
        let (dx, dy) = ((x1 - x0).abs(), -(y1 - y0).abs());
        let (sx, sy) = (if x0 < x1 { 1 } else { -1 }, if y0 < y1 { 1 } else { -1 });
        let (mut x, mut y, mut err) = (x0, y0, dx + dy);
        loop {
            if x >= 0 && y >= 0 {
                self.set(x as usize, y as usize, v);
            }
            if x == x1 && y == y1 {
                break;
            }
            let e2 = 2 * err;
            if e2 >= dy {
                err += dy;
                x += sx;
            }
            if e2 <= dx {
                err += dx;
                y += sy;
            }
        }
    }
}

fn value_range(values: &[f64]) -> (f64, f64) {
    let lo = values.iter().copied().fold(0.0f64, f64::min);
    let hi = values.iter().copied().fold(0.0f64, f64::max);
    if hi > lo {
        (lo, hi)
    } else {
        (lo, lo + 1.0)
    }
}

/// One bar per value, drawn from the zero line; the zero line is gray.
pub fn bar_chart(values: &[f64], bar_width: usize, height: usize) -> Canvas {
    let mut c = Canvas::new(values.len() * bar_width, height);
    let (lo, hi) = value_range(values);
    let scale = (height - 1) as f64 / (hi - lo);
    let to_y = |v: f64| ((hi - v) * scale).round() as usize;
    let zero = to_y(0.0);
    for (k, &v) in values.iter().enumerate() {
        let y = to_y(v);
        let (top, bottom) = if y <= zero { (y, zero + 1) } else { (zero, y + 1) };
        let x0 = k * bar_width;
        c.fill_rect(x0, top, x0 + bar_width.saturating_sub(1).max(1), bottom, BLACK);
    }
    c.fill_rect(0, zero, c.width, zero + 1, 128);
    c
}

/// Polyline through `values` at evenly spaced x positions, scaled to the
/// values' own range.
pub fn line_plot(values: &[f64], step: usize, height: usize) -> Canvas {
    let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    line_plot_scaled(values, step, height, lo, hi)
}

/// Polyline with a fixed vertical range `lo..=hi`.
pub fn line_plot_scaled(values: &[f64], step: usize, height: usize, lo: f64, hi: f64) -> Canvas {
    let width = (values.len().max(1) - 1) * step + 1;
    let mut c = Canvas::new(width, height);
    let span = if hi > lo { hi - lo } else { 1.0 };
    let scale = (height - 1) as f64 / span;
    let pts: Vec<(i64, i64)> = values
        .iter()
        .enumerate()
        .map(|(k, &v)| ((k * step) as i64, ((hi - v) * scale).round() as i64))
        .collect();
    for w in pts.windows(2) {
        c.line(w[0], w[1], BLACK);
    }
    if let [p] = pts.as_slice() {
        c.set(p.0 as usize, p.1 as usize, BLACK);
    }
    c
}

/// Integer upscaling of a cell grid given as `side x side` gray levels.
pub fn grid(side: usize, scale: usize, shade: impl Fn(usize, usize) -> u8) -> Canvas {
    let mut c = Canvas::new(side * scale, side * scale);
    for i in 0..side {
        for j in 0..side {
            let v = shade(i, j);
            c.fill_rect(j * scale, i * scale, (j + 1) * scale, (i + 1) * scale, v);
        }
    }
    c
}

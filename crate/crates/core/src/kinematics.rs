//! 1+1-dimensional frame changes: Lorentz, the weakly relativistic "K4"
//! transform (Lorentz without γ), and Galilean.
//!
//! Units are seconds and kilometres.

use thiserror::Error;

/// Speed of light in km/s.
pub const C_KM_S: f64 = 300_000.0;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum KinematicsError {
    #[error("|v| = {v} km/s is not below c = {c} km/s")]
    Superluminal { v: f64, c: f64 },
    #[error("non-finite frame parameter")]
    NonFinite,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Event {
    pub t: f64,
    pub x: f64,
}

impl Event {
    pub fn new(t: f64, x: f64) -> Self {
        Self { t, x }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FrameKind {
    Lorentz,
    K4,
    Galilean,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FrameTransform {
    v: f64,
    kind: FrameKind,
    c: f64,
}

impl FrameTransform {
    pub fn new(v: f64, kind: FrameKind) -> Result<Self, KinematicsError> {
        Self::with_c(v, kind, C_KM_S)
    }

    /// Same transform with a different value of c (used for c → ∞ checks).
    pub fn with_c(v: f64, kind: FrameKind, c: f64) -> Result<Self, KinematicsError> {
        if !v.is_finite() || !c.is_finite() || c <= 0.0 {
            return Err(KinematicsError::NonFinite);
        }
        if kind == FrameKind::Lorentz && v.abs() >= c {
            return Err(KinematicsError::Superluminal { v, c });
        }
        Ok(Self { v, kind, c })
    }

    pub fn v(&self) -> f64 {
        self.v
    }

    pub fn kind(&self) -> FrameKind {
        self.kind
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    /// γ for Lorentz, 1 otherwise. Written as √(c²/(c²−v²)) so that
    /// v = 0.6c gives exactly 1.25.
    pub fn gamma(&self) -> f64 {
        match self.kind {
            FrameKind::Lorentz => {
                let c2 = self.c * self.c;
                (c2 / (c2 - self.v * self.v)).sqrt()
            }
            _ => 1.0,
        }
    }

    /// The `v → −v` transform. Exact inverse for Lorentz and Galilean only.
    pub fn reversed(&self) -> Self {
        Self { v: -self.v, ..*self }
    }

    pub fn apply(&self, e: Event) -> Event {
        let (v, c2) = (self.v, self.c * self.c);
        match self.kind {
            FrameKind::Lorentz => {
                let g = self.gamma();
                Event::new(g * (e.t - v * e.x / c2), g * (e.x - v * e.t))
            }
            FrameKind::K4 => Event::new(e.t - v * e.x / c2, e.x - v * e.t),
            FrameKind::Galilean => Event::new(e.t, e.x - v * e.t),
        }
    }
}

pub fn transform(e: Event, f: &FrameTransform) -> Event {
    f.apply(e)
}

/// Time coordinate of (boost, then translate by `a`) minus that of
/// (translate by `a`, then boost), for a reference event at the origin.
pub fn composition_gap(a: f64, f: &FrameTransform) -> f64 {
    let origin = Event::new(0.0, 0.0);
    let boost_then_translate = f.apply(origin).t;
    let translate_then_boost = f.apply(Event::new(origin.t, origin.x + a)).t;
    boost_then_translate - translate_then_boost
}

/// `c²t² − x²`.
pub fn interval(e: Event, c: f64) -> f64 {
    c * c * e.t * e.t - e.x * e.x
}

/// Round trip `e → f → f.reversed()`; returns the image.
pub fn round_trip(e: Event, f: &FrameTransform) -> Event {
    f.reversed().apply(f.apply(e))
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScenarioRow {
    pub event: u32,
    pub boys: Event,
    pub girls: Event,
}

/// Event table plus the separations the two groups disagree about.
#[derive(Clone, Debug, PartialEq)]
pub struct Scenario {
    pub v: f64,
    pub gamma: f64,
    pub rows: Vec<ScenarioRow>,
    /// Joe–Bob distance in the girls' frame (both at T = 0).
    pub boys_separation_girls_frame: f64,
    /// Joe–Bob distance in the boys' own frame.
    pub boys_separation_boys_frame: f64,
    /// Kim–Alice distance in the girls' own frame.
    pub kim_alice_girls_frame: f64,
    /// Kim–Alice distance measured by the boys at t = 0.002 s.
    pub kim_alice_boys_frame: f64,
    /// Pairs of (observer, own time) linked by sharing an event.
    pub co_real: Vec<(String, String, u32)>,
}

/// The five-observer scenario: boys Joe (x = 0) and Bob (x = 1000 km) at
/// rest in their frame; girls Sara, Alice, Kim moving at 0.6c relative to them.
pub fn blockworld_scenario() -> Scenario {
    let f = FrameTransform::new(0.6 * C_KM_S, FrameKind::Lorentz).expect("0.6c is subluminal");
    let boys = [Event::new(0.0, 0.0), Event::new(0.0, 1000.0), Event::new(0.002, 1000.0)];
    let rows: Vec<ScenarioRow> = boys
        .iter()
        .enumerate()
        .map(|(i, &b)| ScenarioRow {
            event: i as u32 + 1,
            boys: b,
            girls: f.apply(b),
        })
        .collect();
    let g = f.gamma();
    // A girl at rest at X has boys'-frame position x = X/γ + v t.
    let boys_pos = |big_x: f64, t: f64| big_x / g + f.v() * t;
    let kim_x = rows[1].girls.x;
    let alice_x = rows[2].girls.x;
    let co_real = vec![
        ("Joe t=0".into(), "Sara T=0".into(), 1),
        ("Bob t=0".into(), "Kim T=-0.0025".into(), 2),
        ("Bob t=0.002".into(), "Alice T=0".into(), 3),
        ("Joe t=0".into(), "Bob t=0".into(), 2),
        ("Sara T=0".into(), "Alice T=0".into(), 3),
    ];
    Scenario {
        v: f.v(),
        gamma: g,
        boys_separation_girls_frame: rows[2].girls.x - rows[0].girls.x,
        boys_separation_boys_frame: rows[1].boys.x - rows[0].boys.x,
        kim_alice_girls_frame: kim_x - alice_x,
        kim_alice_boys_frame: boys_pos(kim_x, 0.002) - boys_pos(alice_x, 0.002),
        rows,
        co_real,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= 1e-9 * b.abs().max(1e-12)
    }

    #[test]
    fn lorentz_numbers() {
        let f = FrameTransform::new(0.6 * C_KM_S, FrameKind::Lorentz).unwrap();
        assert_eq!(f.gamma(), 1.25);
        let e2 = f.apply(Event::new(0.0, 1000.0));
        assert!(close(e2.t, -0.0025) && close(e2.x, 1250.0), "{e2:?}");
        let e3 = f.apply(Event::new(0.002, 1000.0));
        assert!(e3.t.abs() < 1e-15 && close(e3.x, 800.0), "{e3:?}");
    }

    #[test]
    fn superluminal_rejected() {
        assert!(FrameTransform::new(C_KM_S, FrameKind::Lorentz).is_err());
        assert!(FrameTransform::new(C_KM_S, FrameKind::K4).is_ok());
    }

    #[test]
    fn gaps() {
        let v = 0.6 * C_KM_S;
        let k4 = FrameTransform::new(v, FrameKind::K4).unwrap();
        assert!(close(composition_gap(1000.0, &k4), 0.002));
        let lor = FrameTransform::new(v, FrameKind::Lorentz).unwrap();
        assert!(close(composition_gap(1000.0, &lor), 1.25 * 0.002));
        let gal = FrameTransform::new(v, FrameKind::Galilean).unwrap();
        assert_eq!(composition_gap(1000.0, &gal), 0.0);
    }

    #[test]
    fn scenario_distances() {
        let s = blockworld_scenario();
        assert!(close(s.boys_separation_girls_frame, 800.0));
        assert!(close(s.kim_alice_girls_frame, 450.0));
        assert!(close(s.kim_alice_boys_frame, 360.0));
        assert_eq!(s.rows.len(), 3);
        assert_eq!(s.rows[0].girls, Event::new(0.0, 0.0));
    }
}

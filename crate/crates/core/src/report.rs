//! Report serialization: every float is written with 17 significant digits.

use std::io::{self, Write};

use serde::Serialize;
use serde_json::ser::{CompactFormatter, Formatter, PrettyFormatter};

/// `x` in scientific notation with 17 significant digits; `-0.0` prints as zero.
pub fn sig17(x: f64) -> String {
    if x.is_finite() {
        // Adding +0.0 turns -0.0 into +0.0 and leaves everything else alone.
        format!("{:.16e}", x + 0.0)
    } else {
        x.to_string()
    }
}

/// JSON formatter writing floats through [`sig17`].
#[derive(Default)]
pub struct Sig17<F = CompactFormatter>(F);

impl Sig17<PrettyFormatter<'static>> {
    pub fn pretty() -> Self {
        Self(PrettyFormatter::new())
    }
}

macro_rules! delegate {
    ($($name:ident ( $($arg:ident : $ty:ty),* );)*) => {
        $(
            fn $name<W: ?Sized + Write>(&mut self, writer: &mut W $(, $arg: $ty)*) -> io::Result<()> {
                self.0.$name(writer $(, $arg)*)
            }
        )*
    };
}

impl<F: Formatter> Formatter for Sig17<F> {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        writer.write_all(sig17(value).as_bytes())
    }

    fn write_f32<W: ?Sized + Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, f64::from(value))
    }

    delegate! {
        begin_array();
        end_array();
        begin_array_value(first: bool);
        end_array_value();
        begin_object();
        end_object();
        begin_object_key(first: bool);
        end_object_key();
        begin_object_value();
        end_object_value();
    }
}

/// Single-line JSON.
pub fn to_json_line<T: Serialize + ?Sized>(value: &T) -> serde_json::Result<String> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, Sig17::<CompactFormatter>::default());
    value.serialize(&mut ser)?;
    Ok(String::from_utf8(buf).expect("serde_json emits UTF-8"))
}

/// Indented JSON.
pub fn to_json_pretty<T: Serialize + ?Sized>(value: &T) -> serde_json::Result<String> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, Sig17::pretty());
    value.serialize(&mut ser)?;
    Ok(String::from_utf8(buf).expect("serde_json emits UTF-8"))
}

/// A convention adopted where two candidate formulas disagree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Convention {
    pub topic: &'static str,
    pub printed: &'static str,
    pub adopted: &'static str,
    pub evidence: &'static str,
}

/// Conventions embedded in every verification report.
pub const CONVENTIONS: &[Convention] = &[
    Convention {
        topic: "group action numerator",
        printed: "f((alpha z - beta)/(-conj(beta) z + alpha))",
        adopted: "f((conj(alpha) z - beta)/(-conj(beta) z + alpha))",
        evidence: "finite differences along exp(tX) reproduce -2iz f' - (xi+2) i f only with conj(alpha)",
    },
    Convention {
        topic: "W basis element",
        printed: "W = [[0,-i],[i,0]] = Y - X",
        adopted: "W = [[0,-i],[i,0]] = Z - X",
        evidence: "matrix subtraction; pi(W) = pi(Z) - pi(X)",
    },
    Convention {
        topic: "kernel shift constant",
        printed: "alpha = 2/(xi+2)",
        adopted: "alpha = 1/(xi+2)",
        evidence: "(xi+3)_k = (1 + k/(xi+2)) (xi+2)_k; see the kernel residual rows",
    },
    Convention {
        topic: "self-adjoint decomposition shift",
        printed: "d = a - b",
        adopted: "d = b - (xi+2) a / 2",
        evidence: "coefficient matching of i pi(U) + d against (c z^2 + a z + conj(c)) d/dz + ((xi+2) c z + b)",
    },
];

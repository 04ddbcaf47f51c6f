//! Host crate for the `acceptance` test target. It lives apart from
//! `schiffer-lab` so that its expected failures do not stop that crate's
//! own test binaries from running.

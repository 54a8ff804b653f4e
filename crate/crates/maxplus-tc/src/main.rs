// Copyright 2026 The maxplus-tc Authors
// SPDX-License-Identifier: Apache-2.0

fn main() {
    let outcome = maxplus_tc::cli::run(std::env::args_os());
    std::process::exit(maxplus_tc::cli::emit(&outcome));
}

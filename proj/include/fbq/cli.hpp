#pragma once

namespace fbq {

/// Entry point behind the fbq binary. Subcommands: simulate, decay, absorb,
/// continuity, verify, refine. Flags: --config PATH, --out DIR,
/// --resume PATH, --seed U64, --quiet. Exit codes: 0 pass, 1 check failure,
/// 2 configuration error, 3 runtime blow-up.
int cli_main(int argc, const char* const* argv);

} // namespace fbq

#pragma once

#include "hopfcorr/io.hpp"

namespace hopfcorr {

/// Preset/data directory: $HOPFCORR_DATA_DIR, else the source-tree data dir.
std::string data_dir();

/// Loads and fully validates a presentation. Accepts a preset name with
/// optional parameters ("suq2?q=1/3"), or a path to a presentation file.
/// Throws ValidationFailed with the offending report when the validation
/// suite (confluence + Hopf axioms + admissibility) fails.
PresentationPtr load_presentation(const std::string& spec,
                                  const std::string& backend_override = "",
                                  int verify_deg = 3, bool validate = true);

/// The free-group tree cocycle on the ball of the given radius:
/// carrier = signed edge space of the ball, pi(a), pi(b) signed
/// permutations (tree translation inside the ball, each translation chain
/// closed by one -1 arc), eta(g) the signed geodesic edge sum. Exact
/// geometry for words within the ball radius.
Cocycle tree_cocycle(PresentationPtr f2, int radius, int cutoff);

/// Built-in corep families: group-like powers for c-z (labels -N..N),
/// reduced words in the radius ball for c-f2, trivial + fundamental for
/// u2w and suq2. horizon is the power/ball bound for the group cases.
CorepFamily preset_corep_family(PresentationPtr P, int horizon);

} // namespace hopfcorr

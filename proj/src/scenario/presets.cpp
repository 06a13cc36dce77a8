#include <algorithm>

#include "qpg/error.hpp"
#include "qpg/scenario.hpp"

namespace qpg {

namespace {

#define QPG_MATERIAL(L)          \
    "[material]\n"               \
    "length_mm = " L "\n"        \
    "poling_period_um = 4.2\n"   \
    "temperature_c = 175\n"      \
    "qpm_order = 1\n"            \
    "polarization = oeo\n"       \
    "calibrate = horizontal\n\n"

#define QPG_BEAMS(ORDER, RATIO) \
    "[gating]\n"                 \
    "center_nm = 870\n"          \
    "fwhm_nm = 0.635\n"          \
    "order = " ORDER "\n\n"      \
    "[input]\n"                  \
    "center_nm = 1550\n"         \
    "fwhm_ratio = " RATIO "\n"   \
    "span_sigma = 20\n"          \
    "n_points = 512\n\n"

#define QPG_OUTPUT(PREFIX) \
    "[output]\n"           \
    "dir = .\n"            \
    "prefix = " PREFIX "\n"

#define QPG_EFFICIENCY   \
    "[gate]\n"           \
    "theta_max = 3.5\n"  \
    "steps = 101\n\n"

const std::vector<Preset> kPresets{
    {"paper_phasematch", "phasematching intensity and ridge diagnostics at the nominal operating point",
     "task = phasematch\n\n" QPG_MATERIAL("50") QPG_BEAMS("0", "1") QPG_OUTPUT("nominal")},
    {"paper_fig2_a1", "transfer kernel of the non-engineered 2 mm crystal",
     "task = transfer\n\n" QPG_MATERIAL("2") QPG_BEAMS("0", "1") QPG_OUTPUT("fig2_a1")},
    {"paper_fig2_b1", "Schmidt coefficients of the non-engineered 2 mm crystal",
     "task = schmidt\n\n" QPG_MATERIAL("2") QPG_BEAMS("0", "1") "[schmidt]\nrank = 32\n\n" QPG_OUTPUT("fig2_b1")},
    {"paper_fig2_c1", "mode efficiencies against coupling, non-engineered 2 mm crystal",
     "task = efficiency\n\n" QPG_MATERIAL("2") QPG_BEAMS("0", "1") QPG_EFFICIENCY QPG_OUTPUT("fig2_c1")},
    {"paper_fig2_a2", "transfer kernel of the 50 mm QPG gated by u0",
     "task = transfer\n\n" QPG_MATERIAL("50") QPG_BEAMS("0", "1") QPG_OUTPUT("fig2_a2")},
    {"paper_fig2_b2", "Schmidt coefficients of the 50 mm QPG gated by u0",
     "task = schmidt\n\n" QPG_MATERIAL("50") QPG_BEAMS("0", "1") "[schmidt]\nrank = 32\n\n" QPG_OUTPUT("fig2_b2")},
    {"paper_fig2_c2", "mode efficiencies against coupling, 50 mm QPG gated by u0",
     "task = efficiency\n\n" QPG_MATERIAL("50") QPG_BEAMS("0", "1") QPG_EFFICIENCY QPG_OUTPUT("fig2_c2")},
    {"paper_fig2_a3", "transfer kernel of the 50 mm QPG gated by u1",
     "task = transfer\n\n" QPG_MATERIAL("50") QPG_BEAMS("1", "1") QPG_OUTPUT("fig2_a3")},
    {"paper_fig2_b3", "Schmidt coefficients of the 50 mm QPG gated by u1",
     "task = schmidt\n\n" QPG_MATERIAL("50") QPG_BEAMS("1", "1") "[schmidt]\nrank = 32\n\n" QPG_OUTPUT("fig2_b3")},
    {"paper_fig2_c3", "mode efficiencies against coupling, 50 mm QPG gated by u1",
     "task = efficiency\n\n" QPG_MATERIAL("50") QPG_BEAMS("1", "1") QPG_EFFICIENCY QPG_OUTPUT("fig2_c3")},
    {"paper_fig4_matched", "overlap of dominant Schmidt modes with input Hermite modes, matched widths",
     "task = selectivity\n\n" QPG_MATERIAL("50") QPG_BEAMS("0", "1")
     "[selectivity]\nmax_gate_order = 10\nmax_input_order = 10\nmatched = true\n\n" QPG_OUTPUT("fig4_matched")},
    {"paper_fig4_unmatched", "overlap map with the gating spectrum twice as wide as the input",
     "task = selectivity\n\n" QPG_MATERIAL("50") QPG_BEAMS("0", "2")
     "[selectivity]\nmax_gate_order = 10\nmax_input_order = 10\nmatched = false\n\n" QPG_OUTPUT("fig4_unmatched")},
    {"paper_herald", "heralded purity of a correlated PDC photon after the u0 QPG",
     "task = herald\n\n" QPG_MATERIAL("50") QPG_BEAMS("0", "1")
     "[herald]\nsource_schmidt_number = 2\nsource_modes = 11\n\n" QPG_OUTPUT("herald")},
};

#undef QPG_MATERIAL
#undef QPG_BEAMS
#undef QPG_OUTPUT
#undef QPG_EFFICIENCY

}  // namespace

const std::vector<Preset>& presets() { return kPresets; }

const Preset& find_preset(std::string_view name) {
    const auto it = std::find_if(kPresets.begin(), kPresets.end(), [name](const Preset& p) { return p.name == name; });
    if (it == kPresets.end()) throw ValidationError("unknown_preset", "no preset named '" + std::string(name) + "'");
    return *it;
}

}  // namespace qpg

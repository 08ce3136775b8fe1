#pragma once

#include <string>

#include "nystrompca/nystrom_kpca.hpp"

namespace nystrompca {

// Versioned JSON blob with everything nystrom_scores_new needs: kernel spec,
// subset indices and rows, lambdas, U, new-point caches and total variance.
// Doubles are written with 17 significant digits, so a round trip reproduces
// scores bit-exactly.
std::string serialize_nystrom_model(const NystromPcaModel& model);
NystromPcaModel deserialize_nystrom_model(const std::string& json_text);

void save_nystrom_model(const NystromPcaModel& model, const std::string& path);
NystromPcaModel load_nystrom_model(const std::string& path);

} // namespace nystrompca

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

#include <json.hpp>

#include "nqc/certificates.hpp"
#include "nqc/exponents.hpp"
#include "nqc/generators.hpp"
#include "nqc/lower_bounds.hpp"
#include "nqc/protocol.hpp"
#include "nqc/tensor.hpp"

namespace nqc {

using Json = nlohmann::ordered_json;

/// Parses text; syntax errors become ParseError naming the source and byte offset.
Json parse_json_text(std::string_view text, std::string_view source = "input");
Json read_json_file(const std::string& path);

// Scalars are {"re": "p/q", "im": "p/q"}. On input a bare string or integer is
// also accepted as a real rational; epsilon coefficients are lists of scalars
// (index = power of eps).
Json scalar_to_json(const Scalar& s);
Scalar scalar_from_json(const Json& j);
Json eps_scalar_to_json(const EpsScalar& s);
EpsScalar eps_scalar_from_json(const Json& j);

/// {"shape": [...], "ring": "Q_i" | "Q_i_eps", "entries": [{"idx": [...], "coef": ...}]}
Json tensor_to_json(const Tensor& t);
Json tensor_to_json(const EpsTensor& t);
AnyTensor any_tensor_from_json(const Json& j);
/// Requires ring "Q_i".
Tensor tensor_from_json(const Json& j);

using AnyCertificate = std::variant<RankCertificate, BorderCertificate>;

/// {"kind": "rank" | "border", "h": h, "shape": [...], "factors": [[vector per party] per term]}
Json certificate_to_json(const RankCertificate& c);
Json certificate_to_json(const BorderCertificate& c);
AnyCertificate certificate_from_json(const Json& j);

/// {"vertices": k, "edges": [[u, v], ...]}
Json graph_to_json(const Multigraph& g);
Multigraph graph_from_json(const Json& j);

/// {"dims": [...], "ones": [[...], ...]}
Json function_table_to_json(const FunctionTable& f);
FunctionTable function_table_from_json(const Json& j);

/// {"blocks": [[n_1, ..., n_k], ...], "r": r}
Json block_spec_to_json(const BlockSpec& s);
BlockSpec block_spec_from_json(const Json& j);

/// {"n": n, "alphas": [n^3 scalars, (i1, i2, i3) row-major]}
Json alpha_table_to_json(const AlphaTable& a);
AlphaTable alpha_table_from_json(const Json& j);

/// Shortest decimal that round-trips to the same double.
std::string format_real(double x);
/// 64-bit FNV-1a of the bytes, as 16 hex digits.
std::string fnv1a_hex(std::string_view bytes);

}  // namespace nqc

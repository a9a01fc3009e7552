#pragma once

// JSON and CSV forms of the library's values. Floats are written with 17
// significant digits so files round-trip bit-exactly.

#include <iosfwd>
#include <span>
#include <string>

#include <json.hpp>

#include "ipmlab/harness.hpp"
#include "ipmlab/haar_mra.hpp"
#include "ipmlab/hard_instances.hpp"
#include "ipmlab/lecam.hpp"
#include "ipmlab/moment_priors.hpp"
#include "ipmlab/points.hpp"

namespace ipmlab {

using Json = nlohmann::json;

Json to_json(const DyadicFunction& f);
DyadicFunction dyadic_function_from_json(const Json& j);

Json to_json(const WaveletCoeffs& c);
WaveletCoeffs wavelet_coeffs_from_json(const Json& j);

Json to_json(const DiscretePrior& p);
DiscretePrior discrete_prior_from_json(const Json& j);

Json to_json(const PriorPair& p);
PriorPair prior_pair_from_json(const Json& j);

Json to_json(const HardInstance& h);
HardInstance hard_instance_from_json(const Json& j);

/// Every component field plus the positivity flag and normalized ratio.
Json to_json(const LowerBoundCertificate& c);

/// {slope, slope_stderr, theoretical_exponent}
Json slope_summary(const RateReport& r);

/// %.17g
std::string format_double(double v);

/// One point per row, d columns, no header.
void write_points_csv(std::ostream& os, const PointSet& pts);
PointSet read_points_csv(std::istream& is, int d);

/// Header n,mean_error,stderr,reps.
void write_rate_csv(std::ostream& os, const RateReport& r);

/// Header n,separation,tv_bound,delta,value,normalized_ratio.
void write_certificate_csv(std::ostream& os, std::span<const LowerBoundCertificate> certs);

}  // namespace ipmlab

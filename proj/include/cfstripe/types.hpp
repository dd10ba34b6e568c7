/*
 * Copyright 2026 The cfstripe Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cfstripe {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

/// L x K activation mask. Entry (l, k) is true when AP l serves user k.
using ActivationMask = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>;

struct Point3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

double distance(const Point3& a, const Point3& b);

enum class ErrorCode {
    invalid_argument = 1,
    numeric = 2,
    io = 3,
};

/// Library error. Carries a code so the C boundary can map it to a status.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
    throw Error(code, what);
}

enum class CorrelationModel { uncorrelated, local_scattering };
enum class Scheme { mr, imr, lmmse, drzf };
enum class UcStrategy { none, beta, sinr };
enum class SymbolAlphabet { gaussian, qpsk };

/// How the D-RZF regularizer average is formed.
enum class RegularizerMode {
    exact,        // per-AP error variance averaged over APs
    approximate,  // high-SNR shortcut noise / (tau_p * p)
};

/// Which users enter the D-RZF regularizer sum.
enum class RegularizerSum {
    all_users,     // one K x K solve shared by every user
    exclude_self,  // per-user sum over i != k
};

std::string_view to_string(CorrelationModel m);
std::string_view to_string(Scheme s);
std::string_view to_string(UcStrategy u);
std::string_view to_string(SymbolAlphabet a);
std::string_view to_string(RegularizerMode m);
std::string_view to_string(RegularizerSum s);

// Accept the spellings used by the CLI and config files; throw on anything else.
CorrelationModel parse_correlation(std::string_view text);
Scheme parse_scheme(std::string_view text);
UcStrategy parse_uc(std::string_view text);
SymbolAlphabet parse_alphabet(std::string_view text);
RegularizerMode parse_regularizer_mode(std::string_view text);
RegularizerSum parse_regularizer_sum(std::string_view text);

}  // namespace cfstripe

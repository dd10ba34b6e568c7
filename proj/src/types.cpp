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

#include "cfstripe/types.hpp"

#include <cmath>

namespace cfstripe {

double distance(const Point3& a, const Point3& b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    const double dz = a.z - b.z;
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

std::string_view to_string(CorrelationModel m) {
    switch (m) {
        case CorrelationModel::uncorrelated: return "uncorrelated";
        case CorrelationModel::local_scattering: return "local_scattering";
    }
    return "?";
}

std::string_view to_string(Scheme s) {
    switch (s) {
        case Scheme::mr: return "mr";
        case Scheme::imr: return "imr";
        case Scheme::lmmse: return "lmmse";
        case Scheme::drzf: return "drzf";
    }
    return "?";
}

std::string_view to_string(UcStrategy u) {
    switch (u) {
        case UcStrategy::none: return "none";
        case UcStrategy::beta: return "beta";
        case UcStrategy::sinr: return "sinr";
    }
    return "?";
}

std::string_view to_string(SymbolAlphabet a) {
    return a == SymbolAlphabet::gaussian ? "gaussian" : "qpsk";
}

std::string_view to_string(RegularizerMode m) {
    return m == RegularizerMode::exact ? "exact" : "approximate";
}

std::string_view to_string(RegularizerSum s) {
    return s == RegularizerSum::all_users ? "all_users" : "exclude_self";
}

namespace {

[[noreturn]] void unknown(std::string_view what, std::string_view text) {
    fail(ErrorCode::invalid_argument,
         "unknown " + std::string(what) + " '" + std::string(text) + "'");
}

}  // namespace

CorrelationModel parse_correlation(std::string_view text) {
    if (text == "uncorrelated") return CorrelationModel::uncorrelated;
    if (text == "local_scattering" || text == "scattering" || text == "correlated")
        return CorrelationModel::local_scattering;
    unknown("correlation model", text);
}

Scheme parse_scheme(std::string_view text) {
    if (text == "mr") return Scheme::mr;
    if (text == "imr") return Scheme::imr;
    if (text == "lmmse") return Scheme::lmmse;
    if (text == "drzf") return Scheme::drzf;
    unknown("scheme", text);
}

UcStrategy parse_uc(std::string_view text) {
    if (text == "none") return UcStrategy::none;
    if (text == "beta") return UcStrategy::beta;
    if (text == "sinr") return UcStrategy::sinr;
    unknown("user-centric strategy", text);
}

SymbolAlphabet parse_alphabet(std::string_view text) {
    if (text == "gaussian") return SymbolAlphabet::gaussian;
    if (text == "qpsk") return SymbolAlphabet::qpsk;
    unknown("symbol alphabet", text);
}

RegularizerMode parse_regularizer_mode(std::string_view text) {
    if (text == "exact") return RegularizerMode::exact;
    if (text == "approximate" || text == "approx") return RegularizerMode::approximate;
    unknown("regularizer mode", text);
}

RegularizerSum parse_regularizer_sum(std::string_view text) {
    if (text == "all_users" || text == "all") return RegularizerSum::all_users;
    if (text == "exclude_self") return RegularizerSum::exclude_self;
    unknown("regularizer sum", text);
}

}  // namespace cfstripe

#pragma once

#include <gtest/gtest.h>

#include <string>
#include <vector>

#include "unirank3/classifier.hpp"
#include "unirank3/jacquet.hpp"
#include "unirank3/oracle.hpp"

namespace u3t {

using namespace unirank3;

inline Rational Q(const std::string& s) { return parse_rational(s); }
inline Segment S(const std::string& b, const std::string& e) { return make_segment(Q(b), Q(e)); }
inline Segment S(const std::string& x) { return singleton(Q(x)); }
inline LineConfig at(const std::string& a) { return LineConfig::at(Q(a)); }

/// Parses a label with A bound to alpha.
inline ClassicalLabel lab(const std::string& text, const LineConfig& cfg) { return parse_label(text, cfg, cfg.alpha); }
inline GLElement gl(const std::string& text) { return parse_gl(text); }
inline RSElement rs(const std::string& text, const LineConfig& cfg) { return parse_rs(text, cfg, cfg.alpha); }

inline std::vector<Rational> exps(std::initializer_list<const char*> xs) {
    std::vector<Rational> v;
    for (const char* x : xs) v.push_back(Q(x));
    return v;
}

inline GLIrrLabel gl_label(const std::string& text) { return gl(text).terms.begin()->first.labels.at(0); }

}  // namespace u3t

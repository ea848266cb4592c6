#pragma once

// Unpruned word scans used as independent oracles in the tests.

#include <algorithm>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "eisen/fuchsian.hpp"
#include "eisen/orbit.hpp"

namespace brute {

using namespace eisen;


// Visits every reduced word of length <= L with its matrix, no pruning.
inline void each_word(const FuchsianGroup& g, int L, const std::function<void(const std::string&, const Mat2&)>& f)
{
    std::string w;
    std::function<void(const Mat2&, int)> rec = [&](const Mat2& m, int last) {
        f(w, m);
        if (static_cast<int>(w.size()) == L) return;
        for (int l = 0; l < 2 * g.rank(); ++l) {
            if (last >= 0 && (last ^ 1) == l) continue;
            w.push_back(letter_char(static_cast<Letter>(l)));
            rec(m * g.images()[l].matrix(), l);
            w.pop_back();
        }
    };
    rec(Mat2{}, -1);
}

// Coset of <S> w for a one-letter stabilizer: drop leading S^{+-1}.
inline std::string strip(std::string w, char s)
{
    const char si = static_cast<char>(s - 'A' + 'a');
    std::size_t i = 0;
    while (i < w.size() && (w[i] == s || w[i] == si)) ++i;
    return w.substr(i);
}

inline UHPoint act(const Mat2& m, const UHPoint& z) { return apply(m, z.x(), z.y()); }

inline std::map<std::string, double> brute_cosets(const FuchsianGroup& g, char stab, int L,
                                           const std::function<double(const UHPoint&)>& d, const UHPoint& z,
                                           double T)
{
    std::map<std::string, double> out;
    each_word(g, L, [&](const std::string& w, const Mat2& m) {
        const double v = d(act(m, z));
        if (v < T) out.emplace(strip(w, stab), v);
    });
    return out;
}

inline void expect_spectrum_matches(const DistanceSpectrum& spec, const std::map<std::string, double>& brute, char stab)
{
    ASSERT_TRUE(spec.complete);
    std::vector<double> expect;
    for (const auto& [w, v] : brute) expect.push_back(v);
    std::sort(expect.begin(), expect.end());
    ASSERT_EQ(spec.distances.size(), expect.size());
    for (std::size_t i = 0; i < expect.size(); ++i) EXPECT_NEAR(spec.distances[i], expect[i], 1e-9) << i;
    for (const Word& w : spec.words) {
        EXPECT_TRUE(brute.count(w.empty() ? std::string() : strip(w.to_string(), stab))) << w.to_string();
    }
}


}  // namespace brute

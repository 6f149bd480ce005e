#pragma once

#include <map>
#include <string>
#include <vector>

namespace mplus {

// Result of one verification sweep. `data` holds machine-readable key/value
// facts (exact values serialized as strings); `witnesses` lists offending
// words/tuples when the check fails.
struct CheckReport {
    std::string name;
    bool pass = true;
    std::vector<std::string> witnesses;
    std::map<std::string, std::string> data;

    void fail(const std::string& witness)
    {
        pass = false;
        witnesses.push_back(witness);
    }

    std::string summary() const
    {
        std::string s = name + ": " + (pass ? "pass" : "FAIL");
        if (!pass && !witnesses.empty())
            s += "  [" + witnesses.front() +
                 (witnesses.size() > 1 ? " …(" + std::to_string(witnesses.size()) + ")" : "") + "]";
        return s;
    }
};

} // namespace mplus

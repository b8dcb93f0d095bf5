#pragma once

#include <ostream>
#include <string>

#include "qmf/verify.hpp"

namespace qmf::cli {

/// All commands return the process exit code:
/// 0 success / all-pass, 1 verification failure, 2 input error.

int cmd_series(const std::string& name, int order, const std::string& format,
               std::ostream& out, std::ostream& err);

int cmd_verify(const std::string& suite, const VerifyOptions& opt, std::ostream& out,
               std::ostream& err);

int cmd_eval(const std::string& path, const std::string& mode, int qorder, int lambda_order,
             int d_order, std::ostream& out, std::ostream& err);

int cmd_blowup(const std::string& path, const std::string& side, std::ostream& out,
               std::ostream& err);

int cmd_convert(const std::string& path, const std::string& direction, std::ostream& out,
                std::ostream& err);

int cmd_conjecture_fk(long chi, long sigma, const std::string& sw, int order,
                      const std::string& format, std::ostream& out, std::ostream& err);

int cmd_ab_series(const std::string& route, int order, std::ostream& out, std::ostream& err);

} // namespace qmf::cli

#pragma once

// The five CLI verbs. Each returns the process exit status and writes its
// report to `log`; file outputs go to `out_dir`.
//
//   validate    convexity report on stdout
//   field       field.csv       x,y,W1,W2,W_norm,U,margin,a11,a12,a22,b1,b2,lambda
//   geodesics   geodesics.csv   series,heading,phi0,t,x,y,u,v,F,status
//   indicatrix  indicatrix.csv  kind,series,horizon,heading,phi0,x,y,status
//   compare     compare.csv     x0,y0,x1,y1,t_classical,t_generalized,gap,flag
//
// field, geodesics and indicatrix also write a matching .svg.

#include <filesystem>
#include <ostream>
#include <string_view>

#include "zermelo/io/config.hpp"

namespace zermelo::io {

enum ExitStatus : int {
  kSuccess = 0,
  kValidationFailure = 1,
  kParseFailure = 2,
};

int cmd_validate(const RunConfig& cfg, std::ostream& log);
int cmd_field(const RunConfig& cfg, const std::filesystem::path& out_dir, std::ostream& log);
int cmd_geodesics(const RunConfig& cfg, const std::filesystem::path& out_dir, std::ostream& log);
int cmd_indicatrix(const RunConfig& cfg, const std::filesystem::path& out_dir, std::ostream& log);
int cmd_compare(const RunConfig& cfg, const std::filesystem::path& out_dir, std::ostream& log);

// Dispatches by verb name; throws std::invalid_argument for an unknown verb.
int run_command(std::string_view verb, const RunConfig& cfg, const std::filesystem::path& out_dir, std::ostream& log);

}  // namespace zermelo::io

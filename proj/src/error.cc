#include "turingflow/error.h"

namespace turingflow {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidMachine: return "InvalidMachine";
    case ErrorCode::kHaltingStateStep: return "HaltingStateStep";
    case ErrorCode::kUnknownState: return "UnknownState";
    case ErrorCode::kUnknownSymbol: return "UnknownSymbol";
    case ErrorCode::kNotExtended: return "NotExtended";
    case ErrorCode::kSymbolNotInAlphabet: return "SymbolNotInAlphabet";
    case ErrorCode::kNotInImage: return "NotInImage";
    case ErrorCode::kNotCantor: return "NotCantor";
    case ErrorCode::kInvalidShift: return "InvalidShift";
    case ErrorCode::kParse: return "Parse";
    case ErrorCode::kOutOfDisk: return "OutOfDisk";
    case ErrorCode::kLeftDisk: return "LeftDisk";
    case ErrorCode::kIntegrationFailure: return "IntegrationFailure";
    case ErrorCode::kDegenerateDenominator: return "DegenerateDenominator";
    case ErrorCode::kNonPositiveParameter: return "NonPositiveParameter";
    case ErrorCode::kIo: return "Io";
  }
  return "Unknown";
}

}  // namespace turingflow

#pragma once

// Turtle sources compiled into the library from data/.
namespace forge::data {

extern const char* const kVstoiTtl;
extern const char* const kHascoTtl;
extern const char* const kHacitoTtl;
extern const char* const kProvTtl;
extern const char* const kQoeTtl;
extern const char* const kQoeMTtl;
extern const char* const kCcsvTtl;
extern const char* const kSampleCatalogTtl;

}  // namespace forge::data

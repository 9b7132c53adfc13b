// Copyright 2026 The enakit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <stdio.h>
#include <string.h>

#include "enakit/enakit.h"

int main(void) {
  const int64_t counts[4] = {8, 2, 2, 8};
  double kappa = 0.0, agreement = 0.0;
  if (enakit_cohen_kappa(counts, &kappa, &agreement) != ENAKIT_OK) return 1;
  if (kappa != 0.6 || agreement != 0.8) return 2;
  if (enakit_cohen_kappa(NULL, &kappa, NULL) != ENAKIT_ERR_INVALID_ARGUMENT) return 3;
  if (strlen(enakit_last_error()) == 0) return 4;
  printf("enakit %s from C: kappa=%.1f\n", enakit_version(), kappa);
  return 0;
}

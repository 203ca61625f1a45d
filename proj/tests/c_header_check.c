/* The public header must compile as plain C. */
#include "punct/punct.h"

#include <stdio.h>

int main(void)
{
    punct_regime_tag tag;
    double pc = 0.0;
    punct_status st = punct_classify_regime(3, 2.0, &tag, &pc);
    if (st != PUNCT_OK) {
        fprintf(stderr, "%s: %s\n", punct_status_name(st), punct_last_error());
        return 1;
    }
    printf("%s p_c=%g\n", punct_regime_name(tag), pc);
    return tag == PUNCT_SUBCRITICAL ? 0 : 1;
}

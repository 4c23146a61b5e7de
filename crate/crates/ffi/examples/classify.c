/* Build: cc classify.c -I../include -L<target>/debug -lenriques_lattice_ffi -lm -lpthread -ldl */
#include <stdio.h>
#include <string.h>

#include "enriques_lattice.h"

static int check(EnqStatus status, const char *what) {
    if (status != ENQ_STATUS_OK) {
        const char *msg = enq_last_error();
        fprintf(stderr, "%s failed (%d): %s\n", what, (int)status, msg ? msg : "");
        return 1;
    }
    return 0;
}

int main(void) {
    EnqModel *model = NULL;
    if (check(enq_model_bundled(&model), "model")) return 1;

    int64_t gram[400];
    if (check(enq_model_gram20(model, gram), "gram")) return 1;
    printf("(G1, G2) = %lld\n", (long long)gram[16 * 20 + 17]);

    char *json = NULL;
    if (check(enq_classify_curve_json(model, "G4", &json), "classify curve")) return 1;
    printf("%s\n", json);
    enq_string_free(json);

    if (check(enq_classify_pencil_json(model, "E1+E12+E2+E23+E3+E13", &json), "classify pencil")) return 1;
    printf("%s\n", strstr(json, "\"singular_fibers\"") ? "pencil classified" : json);
    enq_string_free(json);

    EnqStatus bad = enq_classify_curve_json(model, "1,2", &json);
    printf("malformed vector -> status %d: %s\n", (int)bad, enq_last_error());

    EnqGroupElement *a = NULL, *b = NULL, *ab = NULL;
    if (check(enq_group_parse("(1 2) s1", &a), "parse")) return 1;
    if (check(enq_group_parse("(1 2)", &b), "parse")) return 1;
    if (check(enq_group_multiply(a, b, &ab), "multiply")) return 1;
    char *text = NULL;
    if (check(enq_group_to_string(ab, &text), "to_string")) return 1;
    printf("(1 2) s1 * (1 2) = %s\n", text);
    enq_string_free(text);

    enq_group_free(ab);
    enq_group_free(b);
    enq_group_free(a);
    enq_model_free(model);
    return 0;
}

export interface RecordedCall {
  input: string;
  init?: RequestInit;
}

/** Fetch stand-in that records every request and answers from a script. */
export function fakeFetch(
  responses: Array<{ status: number; body: unknown }>,
) {
  const calls: RecordedCall[] = [];
  let cursor = 0;
  const impl = async (input: string, init?: RequestInit): Promise<Response> => {
    calls.push({ input, init });
    const scripted = responses[Math.min(cursor, responses.length - 1)];
    cursor += 1;
    return new Response(JSON.stringify(scripted.body), {
      status: scripted.status,
      headers: { "content-type": "application/json" },
    });
  };
  return { impl, calls };
}

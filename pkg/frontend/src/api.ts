// Typed client for the election service. The service is the single
// authority: this module never recomputes or reshapes results, it only
// moves JSON.

export type Method = "score" | "irv" | "borda" | "stv";

export interface CandidateRef {
  id: number;
  name: string;
}

export interface ElectionView {
  id: string;
  status: "open" | "closed" | "tallied";
  method: Method;
  candidates: CandidateRef[];
  min_score: number | null;
  max_score: number | null;
  max_tied_placements: number | null;
  seats: number | null;
  created_at: string;
  ballots_cast: number;
}

export interface CreateElectionRequest {
  method: Method;
  candidates: string[];
  min_score?: number;
  max_score?: number;
  max_tied_placements?: number;
  seats?: number;
}

export interface TokenView {
  election_id: string;
  token: string;
}

export interface ReceiptView {
  election_id: string;
  receipt: string;
}

export interface ScoreResultPayload {
  method: "score";
  totals: Record<string, number>;
  winners: number[];
}

export interface WinnerResultPayload {
  method: "irv" | "borda";
  winner: number | null;
  standings?: Record<string, number>;
}

export interface StvResultPayload {
  method: "stv";
  quota: string;
  quota_winners: number[];
  autofill_winners: number[];
  witness_values: string[];
}

export type ResultPayload =
  | ScoreResultPayload
  | WinnerResultPayload
  | StvResultPayload;

export interface RoundView {
  round: number;
  action: string;
  affected: number[];
  tallies: Record<string, string | number>;
}

export interface ResultDoc {
  election_id: string;
  status: string;
  result: ResultPayload;
  rounds: RoundView[];
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly rule: string,
    message: string,
  ) {
    super(message);
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

async function failureFrom(response: Response): Promise<ApiError> {
  let rule = "error";
  let message = response.statusText;
  try {
    const body = await response.json();
    if (body && typeof body.detail === "object" && body.detail !== null) {
      rule = body.detail.rule ?? rule;
      message = body.detail.message ?? message;
    } else if (body && body.detail !== undefined) {
      message = String(body.detail);
    }
  } catch {
    // keep the status text
  }
  return new ApiError(response.status, rule, message);
}

export class ElectionApi {
  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchImpl: FetchLike = (input, init) =>
      fetch(input, init),
  ) {}

  private async request<T>(
    path: string,
    init?: RequestInit,
  ): Promise<T> {
    const response = await this.fetchImpl(this.baseUrl + path, init);
    if (!response.ok) {
      throw await failureFrom(response);
    }
    return (await response.json()) as T;
  }

  private post<T>(path: string, body: unknown): Promise<T> {
    return this.request<T>(path, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  createElection(body: CreateElectionRequest): Promise<ElectionView> {
    return this.post("/elections", body);
  }

  getElection(electionId: string): Promise<ElectionView> {
    return this.request(`/elections/${electionId}`);
  }

  registerVoter(electionId: string, contact: string): Promise<TokenView> {
    return this.post(`/elections/${electionId}/voters`, { contact });
  }

  /**
   * Cast a ballot from an already-serialized body. The caller passes the
   * exact bytes shown at the confirmation step; nothing is re-serialized
   * between confirmation and transmission.
   */
  castBallotRaw(electionId: string, serializedBody: string): Promise<ReceiptView> {
    return this.request(`/elections/${electionId}/ballots`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: serializedBody,
    });
  }

  closeElection(electionId: string): Promise<ResultDoc> {
    return this.request(`/elections/${electionId}/close`, { method: "POST" });
  }

  getResult(electionId: string): Promise<ResultDoc> {
    return this.request(`/elections/${electionId}/result`);
  }
}

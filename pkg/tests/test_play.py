import io
import random
from itertools import product

import pytest

from conftest import xor_chain
from mepnim.fitness import Label
from mepnim.game import StateSpaceMode, build_graph
from mepnim.oracle import bouton_label
from mepnim.play import (
    MoveRecord,
    best_move,
    classifier_strategy,
    formula_classifier,
    interactive_session,
    oracle_classifier,
    play_game,
    random_strategy,
)

MULTISET = StateSpaceMode.MULTISET
TUPLE = StateSpaceMode.TUPLE


class TestBestMove:
    def test_moves_to_the_xor_zero_child(self):
        assert best_move(bouton_label, (2, 1), MULTISET) == (1, 1)
        assert best_move(bouton_label, (2, 1), TUPLE) == (1, 1)

    def test_hopeless_position_falls_back_to_first_child(self):
        # from (1,1) every child is an N-position; first multiset child wins
        assert best_move(bouton_label, (1, 1), MULTISET) == (1, 0)

    def test_forced_move(self):
        assert best_move(bouton_label, (1,), MULTISET) == (0,)

    def test_terminal_rejected(self):
        with pytest.raises(ValueError):
            best_move(bouton_label, (0, 0), MULTISET)

    def test_deterministic(self):
        classify = formula_classifier(xor_chain(3), 3)
        assert best_move(classify, (3, 2, 1), MULTISET) == best_move(classify, (3, 2, 1), MULTISET)


class TestPlayGame:
    def test_single_object_first_mover_wins(self):
        strat = classifier_strategy(bouton_label, MULTISET)
        game = play_game(strat, strat, (1,), MULTISET)
        assert game.winner == 1
        assert len(game.transcript) == 1
        assert str(game.transcript[0]) == "move: heap 1 take 1 -> (0)"

    def test_transcript_never_exceeds_object_count(self):
        rng = random.Random(1)
        for _ in range(30):
            start = tuple(rng.randint(0, 4) for _ in range(3))
            if not any(start):
                continue
            game = play_game(random_strategy(rng, MULTISET), random_strategy(rng, MULTISET),
                             start, MULTISET)
            assert len(game.transcript) <= sum(start)
            assert game.winner in (1, 2)

    def test_oracle_first_mover_wins_from_n_positions(self):
        rng = random.Random(2)
        for n in (1, 2, 3):
            for root in product(range(4), repeat=n):
                if bouton_label(root) is not Label.N:
                    continue
                graph = build_graph(root, MULTISET)
                oracle = classifier_strategy(oracle_classifier(graph), MULTISET)
                rand = random_strategy(rng, MULTISET)
                assert play_game(oracle, rand, root, MULTISET).winner == 1
                assert play_game(oracle, oracle, root, MULTISET).winner == 1

    def test_correct_formula_beats_the_oracle_from_n_positions(self):
        for n in (2, 3):
            formula = classifier_strategy(formula_classifier(xor_chain(n), n), MULTISET)
            for root in product(range(4), repeat=n):
                if bouton_label(root) is not Label.N:
                    continue
                graph = build_graph(root, MULTISET)
                opponent = classifier_strategy(oracle_classifier(graph), MULTISET)
                assert play_game(formula, opponent, root, MULTISET).winner == 1

    def test_illegal_strategy_rejected(self):
        with pytest.raises(ValueError):
            play_game(lambda s: (9, 9), lambda s: (9, 9), (2, 1), MULTISET)

    def test_terminal_start_means_previous_player_already_won(self):
        game = play_game(lambda s: s, lambda s: s, (0, 0), MULTISET)
        assert game.winner == 2
        assert game.transcript == ()


def test_move_record_format():
    assert str(MoveRecord(2, 2, 3, (4, 1, 0))) == "move: heap 2 take 3 -> (4, 1, 0)"


class TestInteractiveSession:
    def run_session(self, script, start, n_heaps=2):
        stdin = io.StringIO(script)
        stdout = io.StringIO()
        interactive_session(formula_classifier(xor_chain(n_heaps), n_heaps), start,
                            MULTISET, stdin=stdin, stdout=stdout)
        return stdout.getvalue()

    def test_rejects_out_of_range_heap(self):
        out = self.run_session("5 1\n1 2\n", (2, 2))
        assert "heap must be 1..2" in out

    def test_rejects_zero_take(self):
        out = self.run_session("1 0\n1 2\n", (2, 2))
        assert "can take 1..2 from heap 1" in out

    def test_rejects_malformed_input(self):
        out = self.run_session("abc\n1 2\n", (2, 2))
        assert "enter two numbers" in out

    def test_machine_punishes_a_blunder(self):
        # human breaks the (2,2) symmetry; machine mirrors and wins
        out = self.run_session("1 2\n1 2\n", (2, 2))
        assert "machine takes the last object - machine wins" in out

    def test_human_can_win_a_lost_game(self):
        out = self.run_session("1 1\n", (1,), n_heaps=1)
        assert "you take the last object - you win" in out

    def test_eof_aborts(self):
        out = self.run_session("", (2, 2))
        assert "session aborted" in out

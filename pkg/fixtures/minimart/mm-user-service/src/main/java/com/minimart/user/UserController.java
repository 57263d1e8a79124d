package com.minimart.user;

import org.springframework.http.ResponseEntity;
import org.springframework.web.bind.annotation.*;

@RestController
@RequestMapping("/api/v1/users")
public class UserController {

    private final AccountService accounts;

    public UserController(AccountService accounts) {
        this.accounts = accounts;
    }

    @GetMapping("/{userId}")
    public UserDto find(@PathVariable("userId") String userId) {
        return accounts.find(userId);
    }

    @PostMapping
    public ResponseEntity<UserDto> create(@RequestBody UserDto body) {
        return ResponseEntity.ok(accounts.create(body));
    }
}
